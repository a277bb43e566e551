#pragma once

#include <span>
#include <utility>
#include <vector>

namespace allocbandit {

// Multi-armed exclusive allocator: K independent single-arm lower bounds;
// each round the arm with the minimal bound is invoked with lb + c/(n_k+1).
class ExclusivePolicy {
public:
    struct Selection {
        int arm;
        double amount;
    };

    ExclusivePolicy(int arm_count, double c); // K >= 1, c > 1

    // Argmin of the lower bounds, ties broken by lowest arm index.
    Selection select() const;

    // Record the outcome of invoking `arm` with `amount` (from select()).
    void observe(int arm, double amount, int success);

    const std::vector<double>& lower_bounds() const { return lb_; }
    const std::vector<long>& invocation_counts() const { return count_; }
    double exploration_c() const { return c_; }

private:
    std::vector<double> lb_;
    std::vector<long> count_;
    double c_;
};

// The two objective sums of the exclusive problem over a played trace.
struct ExclusiveMetrics {
    double excess = 0.0; // sum of (M_t - nu_star)
    long failures = 0;   // sum of (1 - X_t)
};

// trace entries are (amount, success). Requires nu_star > 0.
ExclusiveMetrics exclusive_metrics(std::span<const std::pair<double, int>> trace,
                                   double nu_star);

} // namespace allocbandit
