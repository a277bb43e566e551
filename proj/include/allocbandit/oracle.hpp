#pragma once

#include <optional>
#include <vector>

#include "allocbandit/env.hpp"

namespace allocbandit {

// Boundary tolerance used when deciding whether an arm is fully funded; it
// absorbs float drift in the prefix sums of nu.
inline constexpr double kBudgetTol = 1e-12;

// Optimal allocation profile for known thresholds: arms sorted ascending by
// nu are funded greedily with M*_k = min(nu_k, 1 - sum of earlier M*).
struct OptimalProfile {
    std::vector<double> m_star; // in sorted order, m_star[i] for arm order[i]
    std::vector<int> order;     // order[i] = original index of i-th sorted arm
    int ell = 0;                // number of fully funded arms
    std::optional<double> rho;  // leftover funded to arm ell+1; absent when ell == K
    double opt_reward = 0.0;    // ell + rho / nu_(ell+1) when ell < K, else K
};

// Errors on empty params. Ties on equal nu keep original index order.
OptimalProfile optimal_profile(const ArmParams& params);

// Realized per-round regret: optimal expected reward minus observed successes.
// May be negative on lucky rounds.
double instant_regret(const OptimalProfile& profile, const OutcomeVector& outcomes);

// Single-arm regret (1 - nu) - (X - M), for nu in (0, 1].
double single_arm_regret(double nu, double amount, int success);

// Exhaustive grid-search oracle over allocations with sum <= 1, maximizing
// sum_k min(1, M_k / nu_k). Test oracle; guarded to K <= 4 and step <= 0.1.
double brute_force_opt_reward(const ArmParams& params, double grid_step);

} // namespace allocbandit
