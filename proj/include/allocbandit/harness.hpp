#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "allocbandit/env.hpp"
#include "allocbandit/multi_arm.hpp"

namespace allocbandit {

enum class PolicyKind { SingleArm, Exclusive, MultiArm, LcsApprox };

std::string policy_name(PolicyKind policy);

// How the arm thresholds are specified.
struct ArmSpec {
    enum class Kind { Explicit, Linear, Hard } kind = Kind::Explicit;
    std::vector<double> values; // Explicit: the nu list
    int linear_count = 0;       // Linear: nu_k = 2k/m^2 for k = 1..K
    int linear_m = 0;
    int hard_r = 0;             // Hard: K = 2r, sampled fresh per episode

    int arm_count() const;
};

enum class CheckpointRule { PowersOfTwo, FinalOnly };
enum class FaultInjection { None, Overflow }; // test hook, see run_episode

struct ExperimentConfig {
    PolicyKind policy = PolicyKind::MultiArm;
    double c = 2.0;
    long horizon = 1;
    int replications = 1;
    std::uint64_t seed = 0;
    ArmSpec arms;
    CheckpointRule checkpoints = CheckpointRule::PowersOfTwo;
    FaultInjection fault = FaultInjection::None;
};

// Throws on invalid combinations (e.g. c out of range for the policy).
void validate_config(const ExperimentConfig& config);

// Checkpoints under `rule`: powers of two up to n plus n itself, or just n.
std::vector<long> checkpoints_for(long horizon, CheckpointRule rule);

// One episode's cumulative realized regret at the checkpoints, plus invariant
// counters. For the exclusive policy the per-round regret is
// (M_t - nu*) + (1 - X_t) and the two sums are also reported separately.
struct RegretTrace {
    std::vector<long> checkpoints;
    std::vector<double> cum_regret;
    long overflow_count = 0;    // rounds with sum of allocations > 1 + 1e-12
    long det_violations = 0;    // (arm, round) pairs with det bound above nu
    long prob_violations = 0;   // (arm, round) pairs with prob bound above nu
    double excess = 0.0;        // exclusive policy only
    double failures = 0.0;      // exclusive policy only
};

// Per-round trace sink for the multi-arm policy (state columns are the values
// after the round's update).
struct TraceRow {
    long t;
    int arm;
    char case_label;
    double amount;
    int outcome;
    double det_lb;
    double prob_lb;
    double overshoot;
    double counted_alloc;
    double counted_succ;
};
using TraceSink = std::function<void(const TraceRow&)>;

// Episode streams are derived as mix_seed(master, episode, id) with
// id 0 = environment, 1 = policy coins, 2 = hard-instance sampling.
RegretTrace run_episode(const ExperimentConfig& config, int episode_index,
                        const TraceSink* trace = nullptr);

// Resolved thresholds for one episode (hard instances are per-episode).
ArmParams episode_params(const ExperimentConfig& config, int episode_index);

struct SummaryRow {
    long checkpoint = 0;
    double mean_regret = 0.0;
    double std_error = 0.0;
    int replications = 0;
};

struct ExperimentResult {
    std::vector<SummaryRow> rows; // sorted by checkpoint
    long overflow_count = 0;      // summed over episodes
    long det_violations = 0;
    double prob_violations_per_episode = 0.0;
    // Exclusive policy aggregates (zero otherwise):
    double mean_excess = 0.0, stderr_excess = 0.0;
    double mean_failures = 0.0, stderr_failures = 0.0;
};

// Runs `replications` independent episodes, possibly on several worker
// threads (capped by the ALLOC_BANDIT_THREADS environment variable). The
// result is a pure function of the config, whatever the parallelism.
ExperimentResult run_experiment(const ExperimentConfig& config);

// K = 2r arms: nu_1..nu_r uniform on [1/(2r), 1/r], nu_{r+1}..nu_{2r} = 2/r.
ArmParams hard_instance(int r, std::uint64_t seed);

// Ordinary least-squares slope of y on x. Needs >= 2 points and nonconstant x.
double slope_fit(std::span<const std::pair<double, double>> points);

// Compensated (Kahan) accumulator for long regret sums.
class KahanSum {
public:
    void add(double value) {
        const double y = value - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace allocbandit
