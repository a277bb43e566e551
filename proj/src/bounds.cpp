#include "allocbandit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace allocbandit {

double harmonic(long n) {
    if (n < 0)
        throw std::invalid_argument("harmonic: n must be nonnegative");
    double sum = 0.0;
    for (long i = 1; i <= n; ++i)
        sum += 1.0 / static_cast<double>(i);
    return sum;
}

double single_arm_upper(double c, double n) {
    if (!(c > 1.0))
        throw std::invalid_argument("single_arm_upper: c must be > 1");
    if (!(n >= 1.0))
        throw std::invalid_argument("single_arm_upper: n must be >= 1");
    return c * c / (c - 1.0) * (std::log(n) + 1.0);
}

std::pair<double, double> exclusive_upper(double c, int arm_count, double n) {
    if (!(c > 1.0))
        throw std::invalid_argument("exclusive_upper: c must be > 1");
    if (arm_count < 1 || !(n >= 1.0))
        throw std::invalid_argument("exclusive_upper: arm count and n must be >= 1");
    const double log_term = static_cast<double>(arm_count) * (std::log(n) + 1.0);
    return {c * log_term, c / (c - 1.0) * log_term};
}

std::pair<double, double> exclusive_gap_upper(double c, const ArmParams& params, double n,
                                              double C) {
    if (!(c > 1.0))
        throw std::invalid_argument("exclusive_gap_upper: c must be > 1");
    if (!(n >= 1.0))
        throw std::invalid_argument("exclusive_gap_upper: n must be >= 1");
    if (!(C > 0.0))
        throw std::invalid_argument("exclusive_gap_upper: C must be positive");
    const double nu_star = params.nu_star();
    const double log_n = std::log(n);
    double excess = 0.0, failures = 0.0;
    for (double nu : params.nu) {
        const double gap = nu - nu_star;
        const double gap_term =
            gap > 0.0 ? C * std::log(1.0 / gap) + C : std::numeric_limits<double>::infinity();
        excess += std::min(c * log_n, gap_term);
        failures += std::min(c / (c - 1.0) * log_n, gap_term);
    }
    return {excess, failures};
}

double lb_main_value(int r, long n) {
    if (r < 1)
        throw std::invalid_argument("lb_main_value: r must be >= 1");
    if (n < 2)
        throw std::invalid_argument("lb_main_value: n must be >= 2");
    const double pi_sq_12 = std::numbers::pi * std::numbers::pi / 12.0;
    return static_cast<double>(r) / 32.0 * (harmonic(n - 1) - pi_sq_12);
}

double kl_bernoulli(double p, double q) {
    if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0))
        throw std::invalid_argument("kl_bernoulli: p and q must lie in (0, 1)");
    return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

double lb_rem_value(const ArmParams& params, int ell) {
    const int K = params.arm_count();
    if (ell < 0 || ell >= K)
        throw std::invalid_argument("lb_rem_value: need at least one arm past position ell");
    double nu_star = params.nu[ell];
    for (int k = ell; k < K; ++k) {
        if (!(params.nu[k] > 1.0))
            throw std::invalid_argument("lb_rem_value: arms past position ell must have nu > 1");
        nu_star = std::min(nu_star, params.nu[k]);
    }
    double total = 0.0;
    for (int k = ell; k < K; ++k) {
        const double nu_k = params.nu[k];
        if (nu_k > nu_star)
            total += (1.0 / nu_star - 1.0 / nu_k) / kl_bernoulli(1.0 / nu_k, 1.0 / nu_star);
    }
    return total;
}

double c_factor(double a) {
    if (!(a > 1.0))
        throw std::invalid_argument("c_factor: a must be > 1");
    const double u = 1.0 - 1.0 / a;
    const double first = 4.0 * u * u / (4.0 * u * u + 1.0);
    const double second = (1.0 / a) / (-4.0 * std::log(u));
    return std::max(first, second);
}

double multi_arm_upper_shape(const ArmParams& params, int ell, double n, double C) {
    const int K = params.arm_count();
    if (ell < 0 || ell > K)
        throw std::invalid_argument("multi_arm_upper_shape: ell must lie in [0, K]");
    if (!(n >= 1.0))
        throw std::invalid_argument("multi_arm_upper_shape: n must be >= 1");
    if (!(C > 0.0))
        throw std::invalid_argument("multi_arm_upper_shape: C must be positive");

    std::vector<double> nu = params.nu;
    std::sort(nu.begin(), nu.end());

    double c1 = 0.0;
    if (ell < K) {
        if (ell == 0)
            throw std::invalid_argument(
                "multi_arm_upper_shape: the gap term is undefined without a saturated arm (ell = 0)");
        const double gap0 = nu[ell] - nu[ell - 1];
        if (gap0 == 0.0)
            throw std::invalid_argument("multi_arm_upper_shape: zero gap at arm " +
                                        std::to_string(ell + 1));
        c1 = nu[ell] / gap0;
        for (int k = ell + 1; k < K; ++k) {
            const double gap = nu[k] - nu[ell];
            if (gap == 0.0)
                throw std::invalid_argument("multi_arm_upper_shape: zero gap at arm " +
                                            std::to_string(k + 1));
            c1 += nu[k] / gap;
        }
        c1 *= C;
    }
    const double c2 =
        C * ((ell + 1) * std::max(1.0, std::log(1.0 / nu[0])) +
             static_cast<double>(K) * std::log(static_cast<double>(K)));
    const double log_n = std::log(n);
    return C * ell * log_n + c1 * log_n + c2;
}

} // namespace allocbandit
