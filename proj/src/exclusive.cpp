#include "allocbandit/exclusive.hpp"

#include <stdexcept>

namespace allocbandit {

ExclusivePolicy::ExclusivePolicy(int arm_count, double c) : c_(c) {
    if (arm_count < 1)
        throw std::invalid_argument("ExclusivePolicy: need at least one arm");
    if (!(c > 1.0))
        throw std::invalid_argument("ExclusivePolicy: c must be > 1");
    lb_.assign(arm_count, 0.0);
    count_.assign(arm_count, 0);
}

ExclusivePolicy::Selection ExclusivePolicy::select() const {
    int best = 0;
    for (int k = 1; k < static_cast<int>(lb_.size()); ++k)
        if (lb_[k] < lb_[best])
            best = k;
    return {best, lb_[best] + c_ / static_cast<double>(count_[best] + 1)};
}

void ExclusivePolicy::observe(int arm, double amount, int success) {
    if (arm < 0 || arm >= static_cast<int>(lb_.size()))
        throw std::invalid_argument("ExclusivePolicy::observe: arm index out of range");
    if (success != 0 && success != 1)
        throw std::invalid_argument("ExclusivePolicy::observe: success must be 0 or 1");
    if (success == 0)
        lb_[arm] = amount;
    ++count_[arm];
}

ExclusiveMetrics exclusive_metrics(std::span<const std::pair<double, int>> trace,
                                   double nu_star) {
    if (!(nu_star > 0.0))
        throw std::invalid_argument("exclusive_metrics: nu_star must be positive");
    ExclusiveMetrics m;
    for (const auto& [amount, success] : trace) {
        m.excess += amount - nu_star;
        m.failures += 1 - success;
    }
    return m;
}

} // namespace allocbandit
