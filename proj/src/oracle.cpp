#include "allocbandit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace allocbandit {

OptimalProfile optimal_profile(const ArmParams& params) {
    const int K = params.arm_count();
    OptimalProfile p;
    p.order.resize(K);
    std::iota(p.order.begin(), p.order.end(), 0);
    std::stable_sort(p.order.begin(), p.order.end(),
                     [&](int a, int b) { return params.nu[a] < params.nu[b]; });

    p.m_star.assign(K, 0.0);
    double remaining = 1.0;
    int i = 0;
    for (; i < K; ++i) {
        const double nu_i = params.nu[p.order[i]];
        if (nu_i <= remaining + kBudgetTol) {
            p.m_star[i] = nu_i;
            remaining = std::max(0.0, remaining - nu_i);
        } else {
            break;
        }
    }
    p.ell = i;
    if (p.ell < K) {
        p.m_star[p.ell] = remaining; // 0 <= rho < nu_(ell+1)
        p.rho = remaining;
        p.opt_reward = p.ell + remaining / params.nu[p.order[p.ell]];
    } else {
        p.opt_reward = K;
    }
    return p;
}

double instant_regret(const OptimalProfile& profile, const OutcomeVector& outcomes) {
    if (outcomes.size() != profile.m_star.size())
        throw std::invalid_argument("instant_regret: outcome length does not match arm count");
    int successes = 0;
    for (auto x : outcomes)
        successes += x;
    return profile.opt_reward - successes;
}

double single_arm_regret(double nu, double amount, int success) {
    if (!(nu > 0.0) || nu > 1.0)
        throw std::invalid_argument("single_arm_regret: nu must lie in (0, 1]");
    if (amount < 0.0)
        throw std::invalid_argument("single_arm_regret: allocation must be nonnegative");
    if (success != 0 && success != 1)
        throw std::invalid_argument("single_arm_regret: success must be 0 or 1");
    return (1.0 - nu) - (success - amount);
}

namespace {

// Units are integer multiples of the grid step, so the budget constraint is
// exact regardless of step representability.
double grid_search(const ArmParams& params, double step, int arm, long units_left,
                   double reward_so_far) {
    const int K = params.arm_count();
    if (arm == K - 1) {
        // Last arm: the best grid choice is the largest affordable amount.
        const double m = static_cast<double>(units_left) * step;
        return reward_so_far + std::min(1.0, m / params.nu[arm]);
    }
    double best = 0.0;
    for (long j = 0; j <= units_left; ++j) {
        const double m = static_cast<double>(j) * step;
        const double r = grid_search(params, step, arm + 1, units_left - j,
                                     reward_so_far + std::min(1.0, m / params.nu[arm]));
        best = std::max(best, r);
    }
    return best;
}

} // namespace

double brute_force_opt_reward(const ArmParams& params, double grid_step) {
    if (params.arm_count() > 4)
        throw std::invalid_argument("brute_force_opt_reward: K must be <= 4");
    if (!(grid_step > 0.0) || grid_step > 0.1)
        throw std::invalid_argument("brute_force_opt_reward: grid_step must lie in (0, 0.1]");
    const long budget_units = static_cast<long>(std::floor(1.0 / grid_step + 1e-9));
    return grid_search(params, grid_step, 0, budget_units, 0.0);
}

} // namespace allocbandit
