#include "allocbandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "allocbandit/baseline.hpp"
#include "allocbandit/exclusive.hpp"
#include "allocbandit/oracle.hpp"
#include "allocbandit/single_arm.hpp"

namespace allocbandit {

namespace {
constexpr double kOverflowTol = 1e-12;

constexpr std::uint64_t kEnvStream = 0;
constexpr std::uint64_t kPolicyStream = 1;
constexpr std::uint64_t kInstanceStream = 2;
} // namespace

std::string policy_name(PolicyKind policy) {
    switch (policy) {
    case PolicyKind::SingleArm: return "single";
    case PolicyKind::Exclusive: return "exclusive";
    case PolicyKind::MultiArm: return "multi";
    case PolicyKind::LcsApprox: return "lcs-approx";
    }
    throw std::logic_error("policy_name: unreachable");
}

int ArmSpec::arm_count() const {
    switch (kind) {
    case Kind::Explicit: return static_cast<int>(values.size());
    case Kind::Linear: return linear_count;
    case Kind::Hard: return 2 * hard_r;
    }
    throw std::logic_error("ArmSpec::arm_count: unreachable");
}

void validate_config(const ExperimentConfig& config) {
    if (config.horizon < 1)
        throw std::invalid_argument("config: n must be >= 1");
    if (config.replications < 1)
        throw std::invalid_argument("config: reps must be >= 1");

    switch (config.arms.kind) {
    case ArmSpec::Kind::Explicit:
        if (config.arms.values.empty())
            throw std::invalid_argument("config: arms list must not be empty");
        for (double v : config.arms.values)
            if (!(v > 0.0))
                throw std::invalid_argument("config: arm thresholds must be positive");
        break;
    case ArmSpec::Kind::Linear:
        if (config.arms.linear_count < 1 || config.arms.linear_m < 1)
            throw std::invalid_argument("config: linear family needs K >= 1 and m >= 1");
        break;
    case ArmSpec::Kind::Hard:
        if (config.arms.hard_r < 1)
            throw std::invalid_argument("config: hard-instance family needs r >= 1");
        break;
    }

    switch (config.policy) {
    case PolicyKind::SingleArm:
        if (!(config.c > 1.0))
            throw std::invalid_argument("config: policy single requires c > 1");
        if (config.arms.arm_count() != 1)
            throw std::invalid_argument("config: policy single requires exactly one arm");
        break;
    case PolicyKind::Exclusive:
        if (!(config.c > 1.0))
            throw std::invalid_argument("config: policy exclusive requires c > 1");
        break;
    case PolicyKind::MultiArm:
        if (!(config.c > 2.0))
            throw std::invalid_argument("config: policy multi requires c > 2");
        break;
    case PolicyKind::LcsApprox:
        break; // c unused
    }

    // The single-arm and exclusive analyses assume thresholds in (0, 1].
    if (config.policy == PolicyKind::SingleArm || config.policy == PolicyKind::Exclusive) {
        if (config.arms.kind == ArmSpec::Kind::Hard)
            throw std::invalid_argument("config: hard-instance family is for budgeted policies");
        const ArmParams params = episode_params(config, 0);
        for (double v : params.nu)
            if (v > 1.0)
                throw std::invalid_argument(
                    "config: policy " + policy_name(config.policy) + " requires nu <= 1");
    }
}

std::vector<long> checkpoints_for(long horizon, CheckpointRule rule) {
    std::vector<long> cps;
    if (rule == CheckpointRule::PowersOfTwo) {
        for (long p = 1; p <= horizon && p > 0; p *= 2)
            cps.push_back(p);
    }
    if (cps.empty() || cps.back() != horizon)
        cps.push_back(horizon);
    return cps;
}

ArmParams episode_params(const ExperimentConfig& config, int episode_index) {
    switch (config.arms.kind) {
    case ArmSpec::Kind::Explicit:
        return ArmParams(config.arms.values);
    case ArmSpec::Kind::Linear: {
        std::vector<double> nu(config.arms.linear_count);
        const double m2 = static_cast<double>(config.arms.linear_m) *
                          static_cast<double>(config.arms.linear_m);
        for (int k = 0; k < config.arms.linear_count; ++k)
            nu[k] = 2.0 * (k + 1) / m2;
        return ArmParams(std::move(nu));
    }
    case ArmSpec::Kind::Hard:
        return hard_instance(config.arms.hard_r,
                             mix_seed(config.seed, episode_index, kInstanceStream));
    }
    throw std::logic_error("episode_params: unreachable");
}

namespace {

// Checkpoint bookkeeping shared by the per-policy loops.
struct TraceBuilder {
    explicit TraceBuilder(std::vector<long> cps) {
        trace.checkpoints = std::move(cps);
        trace.cum_regret.reserve(trace.checkpoints.size());
    }

    void round_done(long t, double round_regret) {
        cum.add(round_regret);
        if (next < trace.checkpoints.size() && t == trace.checkpoints[next]) {
            trace.cum_regret.push_back(cum.value());
            ++next;
        }
    }

    RegretTrace trace;
    KahanSum cum;
    std::size_t next = 0;
};

RegretTrace run_multi(const ExperimentConfig& config, const ArmParams& params,
                      RngStream& env_rng, RngStream& coin_rng, const TraceSink* trace) {
    const int K = params.arm_count();
    const OptimalProfile profile = optimal_profile(params);
    TraceBuilder tb(checkpoints_for(config.horizon, config.checkpoints));
    MultiArmPolicy policy(K, config.c);

    StepReport report;
    StepReport* rp = trace ? &report : nullptr;
    for (long t = 1; t <= config.horizon; ++t) {
        std::vector<double> alloc = policy.allocate(coin_rng, rp);

        if (config.fault == FaultInjection::Overflow && t == 1)
            alloc[0] += 0.5; // deliberately break the budget to exercise the counter

        double total = 0.0;
        for (double m : alloc)
            total += m;
        if (total > 1.0 + kOverflowTol)
            ++tb.trace.overflow_count;

        const OutcomeVector outcomes = pull_all(alloc, params, env_rng);
        policy.observe(alloc, outcomes);
        for (int k = 0; k < K; ++k) {
            if (policy.det_lb()[k] > params.nu[k])
                ++tb.trace.det_violations;
            if (policy.prob_lb()[k] > params.nu[k])
                ++tb.trace.prob_violations;
        }
        if (trace) {
            for (int k = 0; k < K; ++k)
                (*trace)(TraceRow{t, k, static_cast<char>(report.arms[k].label), alloc[k],
                                  outcomes[k], policy.det_lb()[k], policy.prob_lb()[k],
                                  policy.overshoot_sum()[k], policy.counted_alloc()[k],
                                  policy.counted_succ()[k]});
        }
        tb.round_done(t, instant_regret(profile, outcomes));
    }
    return std::move(tb.trace);
}

RegretTrace run_lcs(const ExperimentConfig& config, const ArmParams& params,
                    RngStream& env_rng) {
    const int K = params.arm_count();
    const OptimalProfile profile = optimal_profile(params);
    TraceBuilder tb(checkpoints_for(config.horizon, config.checkpoints));
    LcsApproxPolicy policy(K, config.horizon);

    for (long t = 1; t <= config.horizon; ++t) {
        std::vector<double> alloc = policy.allocate();

        if (config.fault == FaultInjection::Overflow && t == 1)
            alloc[0] += 0.5;

        double total = 0.0;
        for (double m : alloc)
            total += m;
        if (total > 1.0 + kOverflowTol)
            ++tb.trace.overflow_count;

        const OutcomeVector outcomes = pull_all(alloc, params, env_rng);
        policy.observe(alloc, outcomes);
        for (int k = 0; k < K; ++k)
            if (policy.bounds()[k] > params.nu[k])
                ++tb.trace.prob_violations;
        tb.round_done(t, instant_regret(profile, outcomes));
    }
    return std::move(tb.trace);
}

RegretTrace run_single(const ExperimentConfig& config, const ArmParams& params,
                       RngStream& env_rng) {
    const double nu = params.nu[0];
    TraceBuilder tb(checkpoints_for(config.horizon, config.checkpoints));
    SingleArmPolicy policy(config.c);

    for (long t = 1; t <= config.horizon; ++t) {
        const double m = policy.allocate();
        const int x = pull(m, nu, env_rng);
        policy.observe(m, x);
        if (policy.lower_bound() > nu)
            ++tb.trace.det_violations;
        tb.round_done(t, single_arm_regret(nu, m, x));
    }
    return std::move(tb.trace);
}

RegretTrace run_exclusive(const ExperimentConfig& config, const ArmParams& params,
                          RngStream& env_rng) {
    const double nu_star = params.nu_star();
    TraceBuilder tb(checkpoints_for(config.horizon, config.checkpoints));
    ExclusivePolicy policy(params.arm_count(), config.c);

    for (long t = 1; t <= config.horizon; ++t) {
        const auto [arm, m] = policy.select();
        const int x = pull(m, params.nu[arm], env_rng);
        policy.observe(arm, m, x);
        if (policy.lower_bounds()[arm] > params.nu[arm])
            ++tb.trace.det_violations;
        tb.trace.excess += m - nu_star;
        tb.trace.failures += 1 - x;
        tb.round_done(t, (m - nu_star) + (1 - x));
    }
    return std::move(tb.trace);
}

int worker_count() {
    if (const char* env = std::getenv("ALLOC_BANDIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Mean and standard error of the mean, compensated.
std::pair<double, double> mean_stderr(std::span<const double> xs) {
    const std::size_t n = xs.size();
    KahanSum sum;
    for (double x : xs)
        sum.add(x);
    const double mean = sum.value() / static_cast<double>(n);
    if (n < 2)
        return {mean, 0.0};
    KahanSum sq;
    for (double x : xs)
        sq.add((x - mean) * (x - mean));
    const double var_of_mean = sq.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
    return {mean, std::sqrt(var_of_mean)};
}

} // namespace

RegretTrace run_episode(const ExperimentConfig& config, int episode_index,
                        const TraceSink* trace) {
    const ArmParams params = episode_params(config, episode_index);
    RngStream env_rng(mix_seed(config.seed, episode_index, kEnvStream));
    RngStream coin_rng(mix_seed(config.seed, episode_index, kPolicyStream));

    switch (config.policy) {
    case PolicyKind::SingleArm:
        return run_single(config, params, env_rng);
    case PolicyKind::Exclusive:
        return run_exclusive(config, params, env_rng);
    case PolicyKind::MultiArm:
        return run_multi(config, params, env_rng, coin_rng, trace);
    case PolicyKind::LcsApprox:
        return run_lcs(config, params, env_rng);
    }
    throw std::logic_error("run_episode: unreachable");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const int reps = config.replications;
    std::vector<RegretTrace> traces(reps);

    const int workers = std::min(worker_count(), reps);
    if (workers <= 1) {
        for (int i = 0; i < reps; ++i)
            traces[i] = run_episode(config, i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next_episode{0};
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int i = next_episode.fetch_add(1); i < reps; i = next_episode.fetch_add(1))
                    traces[i] = run_episode(config, i);
            });
        }
        for (auto& th : pool)
            th.join();
    }

    ExperimentResult result;
    const std::vector<long> cps = checkpoints_for(config.horizon, config.checkpoints);
    std::vector<double> column(reps);
    for (std::size_t j = 0; j < cps.size(); ++j) {
        for (int i = 0; i < reps; ++i)
            column[i] = traces[i].cum_regret[j];
        const auto [mean, se] = mean_stderr(column);
        result.rows.push_back(SummaryRow{cps[j], mean, se, reps});
    }

    double prob_total = 0.0;
    for (const RegretTrace& t : traces) {
        result.overflow_count += t.overflow_count;
        result.det_violations += t.det_violations;
        prob_total += static_cast<double>(t.prob_violations);
    }
    result.prob_violations_per_episode = prob_total / reps;

    if (config.policy == PolicyKind::Exclusive) {
        for (int i = 0; i < reps; ++i)
            column[i] = traces[i].excess;
        std::tie(result.mean_excess, result.stderr_excess) = mean_stderr(column);
        for (int i = 0; i < reps; ++i)
            column[i] = traces[i].failures;
        std::tie(result.mean_failures, result.stderr_failures) = mean_stderr(column);
    }
    return result;
}

ArmParams hard_instance(int r, std::uint64_t seed) {
    if (r < 1)
        throw std::invalid_argument("hard_instance: r must be >= 1");
    RngStream rng(seed);
    std::vector<double> nu(2 * r);
    const double lo = 1.0 / (2.0 * r);
    const double hi = 1.0 / static_cast<double>(r);
    for (int k = 0; k < r; ++k)
        nu[k] = rng.uniform(lo, hi);
    for (int k = r; k < 2 * r; ++k)
        nu[k] = 2.0 / static_cast<double>(r);
    return ArmParams(std::move(nu));
}

double slope_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2)
        throw std::invalid_argument("slope_fit: need at least two points");
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("slope_fit: abscissae are all identical");
    return sxy / sxx;
}

} // namespace allocbandit
