#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "allocbandit/rng.hpp"

namespace allocbandit {

// Hidden threshold vector nu_1..nu_K. Allocating M to arm k makes it succeed
// with probability min(1, M / nu_k).
struct ArmParams {
    std::vector<double> nu;

    explicit ArmParams(std::vector<double> thresholds);

    int arm_count() const { return static_cast<int>(nu.size()); }
    double nu_star() const; // min_k nu_k
};

// One success bit per arm pulled this round.
using OutcomeVector = std::vector<std::uint8_t>;

// min(1, M / nu). Rejects nu <= 0 and M < 0.
double success_prob(double amount, double nu);

// Single Bernoulli pull; consumes exactly one uniform draw.
int pull(double amount, double nu, RngStream& rng);

// Independent pulls for all arms, consumed in ascending arm index so that
// trajectories are reproducible independent of policy internals.
OutcomeVector pull_all(std::span<const double> alloc, const ArmParams& params, RngStream& rng);

} // namespace allocbandit
