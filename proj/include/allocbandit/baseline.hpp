#pragma once

#include <span>
#include <vector>

#include "allocbandit/env.hpp"

namespace allocbandit {

// Approximate reimplementation of the prior confidence-bound allocator, used
// only as a comparison curve and labeled "lcs-approx" in all outputs. Each arm
// keeps a lower confidence bound valid for the whole horizon; every round the
// arms are funded in ascending bound order, each receiving its bound until no
// resource is left. Arms that never failed are still in the initialization
// phase and receive the halving amount 2^-(t-1)/K instead.
class LcsApproxPolicy {
public:
    LcsApproxPolicy(int arm_count, long horizon); // K >= 1, n >= 1

    std::vector<double> allocate() const;

    // Failure during initialization seeds the bound with the failing amount;
    // afterwards rounds with M <= bound feed the counted sums and the bound is
    // the running max of the confidence estimates (it never decreases).
    void observe(std::span<const double> alloc, const OutcomeVector& outcomes);

    const std::vector<double>& bounds() const { return bound_; }
    long rounds_done() const { return rounds_done_; }
    bool initialized(int arm) const { return initialized_[arm] != 0; }

private:
    int arm_count_;
    long horizon_;
    double zeta_; // fixed for the whole run, from eps = 1/(n^3 K)
    long rounds_done_ = 0;
    std::vector<double> bound_;
    std::vector<std::uint8_t> initialized_;
    std::vector<double> counted_alloc_;
    std::vector<double> counted_succ_;
};

} // namespace allocbandit
