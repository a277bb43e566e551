// Command-line frontend: run experiments, emit CSV summaries, per-round
// traces, bound evaluations, optimal profiles, and hard-instance samples.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "allocbandit/bounds.hpp"
#include "allocbandit/config.hpp"
#include "allocbandit/csv.hpp"
#include "allocbandit/harness.hpp"
#include "allocbandit/oracle.hpp"

namespace ab = allocbandit;

namespace {

constexpr int kExitError = 1;     // config / IO problems
constexpr int kExitInvariant = 3; // an invariant counter fired

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Inline experiment flags shared by `simulate` and `sweep`.
struct RunFlags {
    std::string config_path;
    std::string policy;
    double c = 0.0;
    long n = 0;
    long reps = 0;
    std::uint64_t seed = 0;
    std::string arms;
    std::string arm_family;
    int K = 0, m = 0, r = 0;
    std::string checkpoints = "pow2";
    std::string out_path;

    bool has_c = false, has_n = false, has_reps = false, has_seed = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--policy", f.policy, "single | exclusive | multi | lcs-approx");
    cmd->add_option("--c", f.c, "exploration constant")->each([&](const std::string&) { f.has_c = true; });
    cmd->add_option("--n", f.n, "horizon")->each([&](const std::string&) { f.has_n = true; });
    cmd->add_option("--reps", f.reps, "replications")->each([&](const std::string&) { f.has_reps = true; });
    cmd->add_option("--seed", f.seed, "master seed")->each([&](const std::string&) { f.has_seed = true; });
    cmd->add_option("--arms", f.arms, "comma-separated thresholds");
    cmd->add_option("--arm-family", f.arm_family, "linear | hard");
    cmd->add_option("--K", f.K, "linear family arm count");
    cmd->add_option("--m", f.m, "linear family scale (nu_k = 2k/m^2)");
    cmd->add_option("--r", f.r, "hard family half arm count");
    cmd->add_option("--checkpoints", f.checkpoints, "pow2 | final (default pow2)");
    cmd->add_option("--out", f.out_path, "output CSV path (stdout when omitted)");
}

// Builds the config either from a file or from the inline flags by rendering
// them through the same key = value parser, so validation lives in one place.
ab::ExperimentConfig build_config(const RunFlags& f) {
    if (!f.config_path.empty())
        return ab::load_config_file(f.config_path);

    std::string text;
    auto add = [&](const std::string& key, const std::string& value) {
        text += key + " = " + value + "\n";
    };
    if (!f.policy.empty())
        add("policy", f.policy);
    if (f.has_c)
        add("c", fmt(f.c));
    if (f.has_n)
        add("n", std::to_string(f.n));
    if (f.has_reps)
        add("reps", std::to_string(f.reps));
    if (f.has_seed)
        add("seed", std::to_string(f.seed));
    if (!f.arms.empty())
        add("arms", f.arms);
    if (!f.arm_family.empty())
        add("arm_family", f.arm_family);
    if (f.K > 0)
        add("K", std::to_string(f.K));
    if (f.m > 0)
        add("m", std::to_string(f.m));
    if (f.r > 0)
        add("r", std::to_string(f.r));
    add("checkpoints", f.checkpoints);
    return ab::parse_config(text);
}

void write_rows(const ab::SummaryMeta& meta, const std::vector<ab::SummaryRow>& rows,
                const std::string& out_path) {
    if (out_path.empty())
        ab::emit_summary(meta, rows, std::cout);
    else
        ab::emit_summary_file(meta, rows, out_path);
}

int finish_run(const ab::ExperimentResult& result) {
    std::fprintf(stderr,
                 "counters: overflow=%ld det_violations=%ld prob_violations_per_episode=%.3f\n",
                 result.overflow_count, result.det_violations,
                 result.prob_violations_per_episode);
    if (result.overflow_count > 0 || result.det_violations > 0)
        return kExitInvariant;
    return 0;
}

int cmd_simulate(const RunFlags& f, const std::string& trace_path) {
    ab::ExperimentConfig config = build_config(f);

    std::unique_ptr<std::ofstream> trace_file;
    std::unique_ptr<ab::TraceSink> sink;
    if (!trace_path.empty()) {
        if (config.policy != ab::PolicyKind::MultiArm)
            throw std::runtime_error("--trace is only supported for policy multi");
        trace_file = std::make_unique<std::ofstream>(trace_path);
        if (!*trace_file)
            throw std::runtime_error("cannot open trace file: " + trace_path);
        *trace_file << "t,arm,case,M,X,det_lb,prob_lb,S,s_tilde,x_tilde\n";
        sink = std::make_unique<ab::TraceSink>([&](const ab::TraceRow& row) {
            *trace_file << row.t << ',' << row.arm << ',' << row.case_label << ','
                        << fmt(row.amount) << ',' << row.outcome << ',' << fmt(row.det_lb) << ','
                        << fmt(row.prob_lb) << ',' << fmt(row.overshoot) << ','
                        << fmt(row.counted_alloc) << ',' << fmt(row.counted_succ) << '\n';
        });
    }

    ab::ExperimentResult result = ab::run_experiment(config);
    if (sink) {
        // The per-round trace replays episode 0 with identical streams.
        ab::run_episode(config, 0, sink.get());
        trace_file->flush();
        if (!*trace_file)
            throw std::runtime_error("failed writing trace file: " + trace_path);
    }
    write_rows(ab::summary_meta(config), result.rows, f.out_path);
    return finish_run(result);
}

int cmd_sweep(const RunFlags& f) {
    // One fresh experiment per checkpoint horizon, re-using the episode seeds,
    // so horizon-aware policies are re-run per horizon rather than sampled
    // mid-flight. The final-checkpoint row of each run is reported.
    ab::ExperimentConfig config = build_config(f);
    const std::vector<long> horizons =
        ab::checkpoints_for(config.horizon, ab::CheckpointRule::PowersOfTwo);

    std::vector<ab::SummaryRow> rows;
    long overflow = 0, det = 0;
    for (long h : horizons) {
        ab::ExperimentConfig point = config;
        point.horizon = h;
        point.checkpoints = ab::CheckpointRule::FinalOnly;
        ab::ExperimentResult result = ab::run_experiment(point);
        rows.push_back(result.rows.back());
        overflow += result.overflow_count;
        det += result.det_violations;
    }
    write_rows(ab::summary_meta(config), rows, f.out_path);
    std::fprintf(stderr, "counters: overflow=%ld det_violations=%ld\n", overflow, det);
    return (overflow > 0 || det > 0) ? kExitInvariant : 0;
}

int cmd_bounds(const std::string& formula, double c, double n, int K, int r, int ell, double C,
               const std::string& nu_list, double p, double q, double a,
               const std::string& out_path) {
    std::string value;
    if (formula == "harmonic") {
        value = fmt(ab::harmonic(static_cast<long>(n)));
    } else if (formula == "single-arm-upper") {
        value = fmt(ab::single_arm_upper(c, n));
    } else if (formula == "exclusive-upper") {
        const auto [excess, failures] = ab::exclusive_upper(c, K, n);
        value = fmt(excess) + "," + fmt(failures);
    } else if (formula == "exclusive-gap-upper") {
        const auto [excess, failures] =
            ab::exclusive_gap_upper(c, ab::ArmParams(ab::parse_double_list(nu_list)), n, C);
        value = fmt(excess) + "," + fmt(failures);
    } else if (formula == "lb-main") {
        value = fmt(ab::lb_main_value(r, static_cast<long>(n)));
    } else if (formula == "kl-bernoulli") {
        value = fmt(ab::kl_bernoulli(p, q));
    } else if (formula == "lb-rem") {
        value = fmt(ab::lb_rem_value(ab::ArmParams(ab::parse_double_list(nu_list)), ell));
    } else if (formula == "c-factor") {
        value = fmt(ab::c_factor(a));
    } else if (formula == "multi-arm-shape") {
        value = fmt(ab::multi_arm_upper_shape(ab::ArmParams(ab::parse_double_list(nu_list)),
                                              ell, n, C));
    } else {
        throw std::runtime_error("unknown formula: " + formula);
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw std::runtime_error("cannot open output file: " + out_path);
        out = &file;
    }
    *out << "formula,value\n" << formula << ',' << value << '\n';
    return 0;
}

int cmd_oracle(const std::string& arms, const std::string& arm_family, int K, int m, int r,
               std::uint64_t seed, const std::string& out_path) {
    ab::ArmSpec spec;
    if (!arms.empty()) {
        spec.kind = ab::ArmSpec::Kind::Explicit;
        spec.values = ab::parse_double_list(arms);
    } else if (arm_family == "linear") {
        spec.kind = ab::ArmSpec::Kind::Linear;
        spec.linear_count = K;
        spec.linear_m = m;
    } else if (arm_family == "hard") {
        spec.kind = ab::ArmSpec::Kind::Hard;
        spec.hard_r = r;
    } else {
        throw std::runtime_error("oracle: need --arms or --arm-family linear|hard");
    }
    ab::ExperimentConfig config;
    config.arms = spec;
    config.seed = seed;
    const ab::ArmParams params = ab::episode_params(config, 0);
    const ab::OptimalProfile profile = ab::optimal_profile(params);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw std::runtime_error("cannot open output file: " + out_path);
        out = &file;
    }
    *out << "# ell=" << profile.ell;
    if (profile.rho)
        *out << " rho=" << fmt(*profile.rho);
    *out << " opt_reward=" << fmt(profile.opt_reward) << '\n';
    *out << "arm,nu,m_star\n";
    std::vector<double> m_star_by_arm(params.nu.size(), 0.0);
    for (std::size_t i = 0; i < profile.order.size(); ++i)
        m_star_by_arm[profile.order[i]] = profile.m_star[i];
    for (std::size_t k = 0; k < params.nu.size(); ++k)
        *out << k << ',' << fmt(params.nu[k]) << ',' << fmt(m_star_by_arm[k]) << '\n';
    return 0;
}

int cmd_hard_instance(int r, std::uint64_t seed, const std::string& out_path) {
    const ab::ArmParams params = ab::hard_instance(r, seed);
    std::string line = "arms=";
    for (std::size_t k = 0; k < params.nu.size(); ++k) {
        if (k)
            line += ',';
        line += fmt(params.nu[k]);
    }
    if (out_path.empty()) {
        std::cout << line << '\n';
    } else {
        std::ofstream file(out_path);
        if (!file)
            throw std::runtime_error("cannot open output file: " + out_path);
        file << line << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential resource-allocation bandits: policies, bounds, and a Monte Carlo "
                 "harness"};
    app.require_subcommand(1);

    RunFlags sim_flags;
    std::string trace_path;
    CLI::App* simulate = app.add_subcommand("simulate", "run one experiment, write summary CSV");
    add_run_flags(simulate, sim_flags);
    simulate->add_option("--trace", trace_path, "per-round trace CSV for episode 0 (multi only)");

    RunFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "re-run the experiment at every power-of-two horizon up to n");
    add_run_flags(sweep, sweep_flags);

    std::string formula, nu_list, out_path;
    double bc = 2.0, bp = 0.5, bq = 0.5, ba = 2.0, bC = 1.0, bn = 1.0;
    int bK = 1, br = 1, bell = 0;
    CLI::App* bounds = app.add_subcommand("bounds", "evaluate a bound formula, print a CSV row");
    bounds->add_option("--formula", formula,
                       "harmonic | single-arm-upper | exclusive-upper | exclusive-gap-upper | "
                       "lb-main | kl-bernoulli | lb-rem | c-factor | multi-arm-shape")
        ->required();
    bounds->add_option("--c", bc, "exploration constant");
    bounds->add_option("--n", bn, "horizon");
    bounds->add_option("--K", bK, "arm count");
    bounds->add_option("--r", br, "hard family half arm count");
    bounds->add_option("--ell", bell, "saturation count");
    bounds->add_option("--C", bC, "leading constant for multi-arm-shape");
    bounds->add_option("--nu", nu_list, "comma-separated thresholds");
    bounds->add_option("--p", bp, "kl-bernoulli first argument");
    bounds->add_option("--q", bq, "kl-bernoulli second argument");
    bounds->add_option("--a", ba, "c-factor argument");
    bounds->add_option("--out", out_path, "output path (stdout when omitted)");

    std::string oracle_arms, oracle_family, oracle_out;
    int oracle_K = 0, oracle_m = 0, oracle_r = 0;
    std::uint64_t oracle_seed = 0;
    CLI::App* oracle = app.add_subcommand("oracle", "print the optimal allocation profile");
    oracle->add_option("--arms", oracle_arms, "comma-separated thresholds");
    oracle->add_option("--arm-family", oracle_family, "linear | hard");
    oracle->add_option("--K", oracle_K, "linear family arm count");
    oracle->add_option("--m", oracle_m, "linear family scale");
    oracle->add_option("--r", oracle_r, "hard family half arm count");
    oracle->add_option("--seed", oracle_seed, "seed for hard instances");
    oracle->add_option("--out", oracle_out, "output path (stdout when omitted)");

    int hard_r = 1;
    std::uint64_t hard_seed = 0;
    std::string hard_out;
    CLI::App* hard = app.add_subcommand("hard-instance", "sample a hard instance, print its arms");
    hard->add_option("--r", hard_r, "half arm count")->required();
    hard->add_option("--seed", hard_seed, "sampling seed")->required();
    hard->add_option("--out", hard_out, "output path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate)
            return cmd_simulate(sim_flags, trace_path);
        if (*sweep)
            return cmd_sweep(sweep_flags);
        if (*bounds)
            return cmd_bounds(formula, bc, bn, bK, br, bell, bC, nu_list, bp, bq, ba, out_path);
        if (*oracle)
            return cmd_oracle(oracle_arms, oracle_family, oracle_K, oracle_m, oracle_r,
                              oracle_seed, oracle_out);
        if (*hard)
            return cmd_hard_instance(hard_r, hard_seed, hard_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
