#include <doctest.h>

#include <stdexcept>
#include <sstream>

#include "allocbandit/config.hpp"
#include "allocbandit/csv.hpp"

using namespace allocbandit;

TEST_CASE("parse_config full example") {
    const ExperimentConfig config = parse_config(
        "# the two-arm benchmark\n"
        "policy = multi\n"
        "c = 2.5\n"
        "n = 262144\n"
        "reps = 100\n"
        "seed = 7\n"
        "arms = 0.4,0.6\n");
    CHECK(config.policy == PolicyKind::MultiArm);
    CHECK(config.c == 2.5);
    CHECK(config.horizon == 262144);
    CHECK(config.replications == 100);
    CHECK(config.seed == 7);
    CHECK(config.arms.values == std::vector<double>{0.4, 0.6});
    CHECK(config.checkpoints == CheckpointRule::PowersOfTwo);
}

TEST_CASE("parse_config rejects c = 2 for the multi policy") {
    CHECK_THROWS_AS(parse_config("policy = multi\nc = 2.0\nn = 16\nreps = 1\nseed = 1\n"
                                 "arms = 0.4,0.6\n"),
                    std::invalid_argument);
}

TEST_CASE("parse_config linear family") {
    const ExperimentConfig config = parse_config(
        "policy = multi\nc = 2.5\nn = 1024\nreps = 2\nseed = 3\n"
        "arm_family = linear\nK = 50\nm = 25\n");
    CHECK(config.arms.kind == ArmSpec::Kind::Linear);
    const ArmParams params = episode_params(config, 0);
    REQUIRE(params.arm_count() == 50);
    CHECK(params.nu[0] == doctest::Approx(2.0 / 625.0));
    CHECK(params.nu[49] == doctest::Approx(100.0 / 625.0));
}

TEST_CASE("parse_config hard family") {
    const ExperimentConfig config = parse_config(
        "policy = multi\nc = 3\nn = 64\nreps = 2\nseed = 3\narm_family = hard\nr = 5\n");
    CHECK(config.arms.kind == ArmSpec::Kind::Hard);
    CHECK(config.arms.arm_count() == 10);
    // Distinct episodes draw distinct instances.
    CHECK(episode_params(config, 0).nu != episode_params(config, 1).nu);
}

TEST_CASE("parse_config error paths") {
    const std::string base = "policy = multi\nc = 2.5\nn = 16\nreps = 1\nseed = 1\n";
    CHECK_THROWS_AS(parse_config(base), std::invalid_argument); // no arm spec
    CHECK_THROWS_AS(parse_config(base + "arms = 0.4\narm_family = hard\nr = 1\n"),
                    std::invalid_argument); // both specs
    CHECK_THROWS_AS(parse_config(base + "arms = 0.4,0.6\nwidgets = 3\n"),
                    std::invalid_argument); // unknown key
    CHECK_THROWS_AS(parse_config(base + "arms = 0.4,0.6\nn = 32\n"),
                    std::invalid_argument); // duplicate key
    CHECK_THROWS_AS(parse_config(base + "arms = zero\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(base + "arms = 0.4,-0.6\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("policy = multi\nc = 2.5\nreps = 1\nseed = 1\narms = 0.4\n"),
                    std::invalid_argument); // missing n
    CHECK_THROWS_AS(parse_config(base + "arm_family = exotic\nK = 3\n"),
                    std::invalid_argument);
}

TEST_CASE("parse_config test hook and checkpoint rule") {
    const ExperimentConfig config = parse_config(
        "policy = multi\nc = 2.5\nn = 16\nreps = 1\nseed = 1\narms = 0.4,0.6\n"
        "checkpoints = final\ninject_fault = overflow\n");
    CHECK(config.checkpoints == CheckpointRule::FinalOnly);
    CHECK(config.fault == FaultInjection::Overflow);
}

TEST_CASE("emit_summary round trip and byte determinism") {
    const SummaryMeta meta{"multi", 2.5, 2, 7, 100};
    const std::vector<SummaryRow> rows = {
        {1024, 12.345678901234567, 0.19999999999999998, 100},
        {256, 3.0000000000000004, 0.1, 100},
    };

    std::ostringstream a, b;
    emit_summary(meta, rows, a);
    emit_summary(meta, rows, b);
    CHECK(a.str() == b.str());

    // Header + one line per row, sorted by checkpoint.
    std::istringstream in(a.str());
    const std::vector<SummaryRow> parsed = parse_summary(in);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].checkpoint == 256);
    CHECK(parsed[1].checkpoint == 1024);
    CHECK(parsed[0].mean_regret == 3.0000000000000004);
    CHECK(parsed[1].mean_regret == 12.345678901234567);
    CHECK(parsed[1].std_error == 0.19999999999999998);
    CHECK(parsed[0].replications == 100);
}

TEST_CASE("emit_summary single row gives a two-line file") {
    const SummaryMeta meta{"single", 2.0, 1, 1, 1};
    const std::vector<SummaryRow> rows = {{16, 1.5, 0.0, 1}};
    std::ostringstream out;
    emit_summary(meta, rows, out);
    const std::string text = out.str();
    CHECK(text == "policy,c,K,seed,reps,n_checkpoint,mean_regret,stderr\n"
                  "single,2,1,1,1,16,1.5,0\n");
    CHECK_THROWS_AS(emit_summary(meta, {}, out), std::invalid_argument);
}
