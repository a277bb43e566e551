#include "allocbandit/single_arm.hpp"

#include <stdexcept>

namespace allocbandit {

SingleArmPolicy::SingleArmPolicy(double c) : c_(c) {
    if (!(c > 1.0))
        throw std::invalid_argument("SingleArmPolicy: c must be > 1");
}

double SingleArmPolicy::allocate() const {
    return lb_ + c_ / static_cast<double>(rounds_done_ + 1);
}

void SingleArmPolicy::observe(double amount, int success) {
    if (success != 0 && success != 1)
        throw std::invalid_argument("SingleArmPolicy::observe: success must be 0 or 1");
    // Allocations always exceed the current bound, so the failing amount is
    // the new maximum of all failing amounts.
    if (success == 0)
        lb_ = amount;
    ++rounds_done_;
}

} // namespace allocbandit
