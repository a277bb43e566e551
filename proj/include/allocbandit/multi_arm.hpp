#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "allocbandit/env.hpp"
#include "allocbandit/rng.hpp"

namespace allocbandit {

// Exploration increment granted above the deterministic bound when resources
// allow: c * det_lb * exp(-overshoot / (c * det_lb)), and 0 when det_lb = 0.
double headroom(double det_lb, double overshoot, double c);

// Confidence width for round t with K arms: eps = t^-3 K^-1 and
// zeta = (sqrt(1/2) + sqrt(1/2 - ln eps))^2.
double zeta(long t, int arm_count);

// Lower confidence estimate of nu from the counted sums:
// (sqrt(z/2s) + sqrt(z/2s + x/s))^-2, and 0 when s = 0.
double prob_lower_bound(double counted_alloc, double counted_succ, double z);

// Which branch of the allocation rule an arm took this round.
enum class AllocCase : char {
    Init = 'I',      // det_lb = 0: halving amount 1/(K 2^(t-1)), capped at what remains
    Full = 'A',      // enough resource for det_lb + headroom
    Coin = 'B',      // fair coin between det_lb and all remaining resource
    Remainder = 'C', // remaining resource is at most det_lb
};

struct ArmStep {
    double amount = 0.0;
    AllocCase label = AllocCase::Init;
    double headroom = 0.0; // r_{k,t} used in the case decision
    int coin = -1;         // case B only: 0 = kept det_lb, 1 = took the remainder
};

// Everything decided during one allocation round.
struct StepReport {
    std::vector<ArmStep> arms; // indexed by arm
    double epsilon = 0.0;
    double zeta = 0.0;
    double leftover = 0.0; // resource left after all arms were processed
};

// Full-allocation policy: per-round priority order by max(det_lb, prob_lb)
// ascending, cases I/A/B/C, deterministic bound from failing amounts, and a
// probabilistic bound from the rounds counted at or below the deterministic
// bound.
class MultiArmPolicy {
public:
    MultiArmPolicy(int arm_count, double c); // K >= 1, c > 2

    // Allocations for the next round. Consumes one fair coin per case-B arm,
    // in processing order. Does not mutate learner state.
    std::vector<double> allocate(RngStream& coin_rng, StepReport* report = nullptr) const;

    // Fold in the outcomes of the round played with `alloc` (from allocate()).
    void observe(std::span<const double> alloc, const OutcomeVector& outcomes);

    int arm_count() const { return arm_count_; }
    double exploration_c() const { return c_; }
    long rounds_done() const { return rounds_done_; }

    const std::vector<double>& det_lb() const { return det_lb_; }
    const std::vector<double>& prob_lb() const { return prob_lb_; }
    const std::vector<double>& overshoot_sum() const { return overshoot_; }
    const std::vector<double>& counted_alloc() const { return counted_alloc_; }
    const std::vector<double>& counted_succ() const { return counted_succ_; }

    // Rebuild a policy mid-run from its running sums (diagnostics and tests).
    static MultiArmPolicy restore(double c, long rounds_done,
                                  std::vector<double> det_lb, std::vector<double> prob_lb,
                                  std::vector<double> overshoot,
                                  std::vector<double> counted_alloc,
                                  std::vector<double> counted_succ);

private:
    int arm_count_;
    double c_;
    long rounds_done_ = 0;
    std::vector<double> det_lb_;
    std::vector<double> prob_lb_;
    std::vector<double> overshoot_;     // S: overshoot above det_lb, init rounds excluded
    std::vector<double> counted_alloc_; // s~: allocation over rounds with M <= det_lb
    std::vector<double> counted_succ_;  // x~: successes over those rounds
};

} // namespace allocbandit
