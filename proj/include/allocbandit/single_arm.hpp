#pragma once

#include <cstdint>

namespace allocbandit {

// Single-arm allocator: keep a guaranteed lower bound on the threshold,
// allocate lb + c/t, and raise the bound to the failing amount on failure.
class SingleArmPolicy {
public:
    // Requires c > 1; the default c = 2 minimizes the regret guarantee.
    explicit SingleArmPolicy(double c = 2.0);

    // lb + c/(t+1) for the upcoming round. Does not mutate state.
    double allocate() const;

    // Record the outcome of a round played with `amount` (the value allocate()
    // returned). Failure raises the lower bound to `amount`.
    void observe(double amount, int success);

    double lower_bound() const { return lb_; }
    long rounds_done() const { return rounds_done_; }
    double exploration_c() const { return c_; }

private:
    double lb_ = 0.0;
    long rounds_done_ = 0;
    double c_;
};

} // namespace allocbandit
