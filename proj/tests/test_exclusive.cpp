#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <utility>
#include <vector>

#include "allocbandit/bounds.hpp"
#include "allocbandit/env.hpp"
#include "allocbandit/exclusive.hpp"

using namespace allocbandit;

TEST_CASE("construction") {
    const ExclusivePolicy p(3, 2.0);
    CHECK(p.lower_bounds() == std::vector<double>{0.0, 0.0, 0.0});
    CHECK_NOTHROW(ExclusivePolicy(1, 2.0));
    CHECK_THROWS_AS(ExclusivePolicy(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ExclusivePolicy(0, 2.0), std::invalid_argument);
}

TEST_CASE("selection rule") {
    ExclusivePolicy p(2, 2.0);
    auto sel = p.select();
    CHECK(sel.arm == 0); // tie broken by lowest index
    CHECK(sel.amount == 2.0);

    // lbs = (0.2, 0.5, 0.2), counts = (4, 1, 7)
    ExclusivePolicy q(3, 2.0);
    q.observe(0, 0.2, 0);
    for (int i = 0; i < 3; ++i)
        q.observe(0, 0.3, 1);
    q.observe(1, 0.5, 0);
    q.observe(2, 0.2, 0);
    for (int i = 0; i < 6; ++i)
        q.observe(2, 0.3, 1);
    sel = q.select();
    CHECK(sel.arm == 0);
    CHECK(sel.amount == doctest::Approx(0.6)); // 0.2 + 2/5

    // lbs = (0.3, 0.1), counts = (5, 2)
    ExclusivePolicy r(2, 2.5);
    r.observe(0, 0.3, 0);
    for (int i = 0; i < 4; ++i)
        r.observe(0, 0.4, 1);
    r.observe(1, 0.1, 0);
    r.observe(1, 0.2, 1);
    sel = r.select();
    CHECK(sel.arm == 1);
    CHECK(sel.amount == doctest::Approx(0.1 + 2.5 / 3.0));
}

TEST_CASE("observe updates only the invoked arm") {
    ExclusivePolicy p(2, 2.0);
    p.observe(0, 0.6, 0);
    CHECK(p.lower_bounds() == std::vector<double>{0.6, 0.0});
    CHECK(p.invocation_counts() == std::vector<long>{1, 0});

    p.observe(1, 0.4, 1);
    CHECK(p.lower_bounds() == std::vector<double>{0.6, 0.0});
    CHECK(p.invocation_counts() == std::vector<long>{1, 1});

    p.observe(1, 0.5, 0);
    CHECK(p.lower_bounds() == std::vector<double>{0.6, 0.5});

    CHECK_THROWS_AS(p.observe(2, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(p.observe(0, 0.5, 7), std::invalid_argument);
}

TEST_CASE("exclusive_metrics") {
    CHECK_THROWS_AS(exclusive_metrics({}, 0.0), std::invalid_argument);

    const std::vector<std::pair<double, int>> empty;
    auto m = exclusive_metrics(empty, 0.3);
    CHECK(m.excess == 0.0);
    CHECK(m.failures == 0);

    const std::vector<std::pair<double, int>> one = {{0.5, 1}};
    m = exclusive_metrics(one, 0.3);
    CHECK(m.excess == doctest::Approx(0.2));
    CHECK(m.failures == 0);

    const std::vector<std::pair<double, int>> two = {{0.5, 0}, {0.4, 1}};
    m = exclusive_metrics(two, 0.3);
    CHECK(m.excess == doctest::Approx(0.3));
    CHECK(m.failures == 1);
}

TEST_CASE("per-arm bounds stay below the thresholds") {
    const ArmParams params({0.25, 0.7, 0.4});
    long violations = 0;
    for (int seed = 0; seed < 40; ++seed) {
        RngStream rng(300 + seed);
        ExclusivePolicy p(3, 2.0);
        for (int t = 0; t < 20'000; ++t) {
            const auto [arm, m] = p.select();
            p.observe(arm, m, pull(m, params.nu[arm], rng));
            for (int k = 0; k < 3; ++k)
                if (p.lower_bounds()[k] > params.nu[k])
                    ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("parameter-free bounds hold on average") {
    const ArmParams params({0.35, 0.55});
    const double c = 2.0;
    const long n = 2000;
    const int reps = 60;
    const double nu_star = params.nu_star();

    std::vector<double> excesses, failures;
    for (int rep = 0; rep < reps; ++rep) {
        RngStream rng(700 + rep);
        ExclusivePolicy p(2, c);
        double excess = 0.0;
        long fails = 0;
        for (long t = 1; t <= n; ++t) {
            const auto [arm, m] = p.select();
            const int x = pull(m, params.nu[arm], rng);
            p.observe(arm, m, x);
            excess += m - nu_star;
            fails += 1 - x;
        }
        excesses.push_back(excess);
        failures.push_back(static_cast<double>(fails));
    }

    auto mean_se = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs)
            mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs)
            var += (x - mean) * (x - mean);
        return std::pair{mean, std::sqrt(var / (xs.size() * (xs.size() - 1.0)))};
    };
    const auto [excess_bound, failure_bound] = exclusive_upper(c, 2, n);
    const auto [me, se_e] = mean_se(excesses);
    CHECK(me + 3.0 * se_e <= excess_bound);
    const auto [mf, se_f] = mean_se(failures);
    CHECK(mf + 3.0 * se_f <= failure_bound);
}

TEST_CASE("gap adaptivity: the worse arm stops being invoked") {
    const ArmParams params({0.3, 0.6});
    long window_total = 0;
    for (int seed = 0; seed < 20; ++seed) {
        RngStream rng(40 + seed);
        ExclusivePolicy p(2, 2.0);
        long at_1e4 = 0;
        for (long t = 1; t <= 100'000; ++t) {
            const auto [arm, m] = p.select();
            p.observe(arm, m, pull(m, params.nu[arm], rng));
            if (t == 10'000)
                at_1e4 = p.invocation_counts()[1];
        }
        window_total += p.invocation_counts()[1] - at_1e4;
    }
    // Invocations of arm 2 are flat between the 10^4 and 10^5 checkpoints.
    CHECK(static_cast<double>(window_total) / 20.0 <= 1.0);
}
