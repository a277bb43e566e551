#include "allocbandit/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "allocbandit/multi_arm.hpp"

namespace allocbandit {

namespace {
constexpr double kResourceTol = 1e-12;
} // namespace

LcsApproxPolicy::LcsApproxPolicy(int arm_count, long horizon)
    : arm_count_(arm_count), horizon_(horizon) {
    if (arm_count < 1)
        throw std::invalid_argument("LcsApproxPolicy: need at least one arm");
    if (horizon < 1)
        throw std::invalid_argument("LcsApproxPolicy: horizon must be >= 1");
    zeta_ = zeta(horizon, arm_count);
    bound_.assign(arm_count, 0.0);
    initialized_.assign(arm_count, 0);
    counted_alloc_.assign(arm_count, 0.0);
    counted_succ_.assign(arm_count, 0.0);
}

std::vector<double> LcsApproxPolicy::allocate() const {
    const long t = rounds_done_ + 1;
    const int K = arm_count_;

    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (bound_[a] != bound_[b])
            return bound_[a] < bound_[b];
        return a < b;
    });

    const double init_amount = std::ldexp(1.0 / K, -static_cast<int>(std::min<long>(t - 1, 2000)));

    std::vector<double> alloc(K, 0.0);
    double res = 1.0;
    for (int k : order) {
        const double m = initialized_[k] ? std::min(res, bound_[k]) : std::min(res, init_amount);
        alloc[k] = m;
        res -= m;
        if (res < kResourceTol)
            res = 0.0;
    }
    return alloc;
}

void LcsApproxPolicy::observe(std::span<const double> alloc, const OutcomeVector& outcomes) {
    const int K = arm_count_;
    if (static_cast<int>(alloc.size()) != K || static_cast<int>(outcomes.size()) != K)
        throw std::invalid_argument("LcsApproxPolicy::observe: shape mismatch");

    for (int k = 0; k < K; ++k) {
        if (!initialized_[k]) {
            if (outcomes[k] == 0) {
                bound_[k] = alloc[k];
                initialized_[k] = 1;
            }
            continue;
        }
        if (alloc[k] <= bound_[k]) {
            counted_alloc_[k] += alloc[k];
            counted_succ_[k] += outcomes[k];
            bound_[k] = std::max(
                bound_[k], prob_lower_bound(counted_alloc_[k], counted_succ_[k], zeta_));
        }
    }
    ++rounds_done_;
}

} // namespace allocbandit
