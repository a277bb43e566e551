#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <vector>

#include "allocbandit/env.hpp"
#include "allocbandit/single_arm.hpp"

using namespace allocbandit;

TEST_CASE("construction") {
    const SingleArmPolicy p(2.0);
    CHECK(p.lower_bound() == 0.0);
    CHECK(p.rounds_done() == 0);
    CHECK_THROWS_AS(SingleArmPolicy(1.0), std::invalid_argument);
    CHECK_NOTHROW(SingleArmPolicy(2.5));
}

TEST_CASE("allocation formula") {
    SingleArmPolicy p(2.0);
    CHECK(p.allocate() == 2.0);

    p.observe(0.5, 0); // lb = 0.5, t = 1
    p.observe(p.allocate(), 1);
    p.observe(p.allocate(), 1); // t = 3
    CHECK(p.allocate() == doctest::Approx(1.0)); // 0.5 + 2/4

    SingleArmPolicy q(2.5);
    q.observe(0.55, 0);
    for (int t = 1; t < 99; ++t)
        q.observe(q.allocate(), 1);
    CHECK(q.rounds_done() == 99);
    CHECK(q.allocate() == doctest::Approx(0.575)); // 0.55 + 2.5/100
}

TEST_CASE("observe transitions") {
    SingleArmPolicy p(2.0);
    p.observe(2.0, 1);
    CHECK(p.lower_bound() == 0.0);
    CHECK(p.rounds_done() == 1);

    p.observe(0.5, 0);
    CHECK(p.lower_bound() == 0.5);

    // A later failure replaces the bound with the (larger) failing amount.
    const double m = p.allocate();
    CHECK(m > 0.5);
    p.observe(m, 0);
    CHECK(p.lower_bound() == m);

    CHECK_THROWS_AS(p.observe(0.5, 2), std::invalid_argument);
}

TEST_CASE("lower bound never exceeds nu") {
    // 100 seeds x 10^5 rounds against thresholds across (0, 1].
    long violations = 0;
    for (int seed = 0; seed < 100; ++seed) {
        const double nu = 0.005 + 0.995 * (seed / 99.0);
        RngStream rng(1000 + seed);
        SingleArmPolicy p(2.0);
        for (int t = 0; t < 100'000; ++t) {
            const double m = p.allocate();
            p.observe(m, pull(m, nu, rng));
            if (p.lower_bound() > nu)
                ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("error decay matches the 1/(t+1) rate") {
    const double nu = 0.6;
    const double c = 2.0;
    const int reps = 3000;
    const std::vector<long> marks = {10, 100};

    std::vector<std::vector<double>> errs(marks.size());
    for (int rep = 0; rep < reps; ++rep) {
        RngStream rng(500 + rep);
        SingleArmPolicy p(c);
        std::size_t mi = 0;
        for (long t = 1; t <= marks.back(); ++t) {
            const double m = p.allocate();
            p.observe(m, pull(m, nu, rng));
            if (mi < marks.size() && t == marks[mi])
                errs[mi++].push_back(nu - p.lower_bound());
        }
    }
    for (std::size_t i = 0; i < marks.size(); ++i) {
        double mean = 0.0;
        for (double e : errs[i])
            mean += e;
        mean /= reps;
        double var = 0.0;
        for (double e : errs[i])
            var += (e - mean) * (e - mean);
        const double se = std::sqrt(var / (static_cast<double>(reps) * (reps - 1)));
        const double bound = c * c / ((c - 1.0) * (marks[i] + 1));
        CHECK(mean + 3.0 * se <= bound);
    }
}

TEST_CASE("excess allocation telescopes to c(ln n + 1)") {
    const double nu = 0.37;
    const double c = 2.0;
    const long n = 10'000;
    for (int seed = 0; seed < 5; ++seed) {
        RngStream rng(90 + seed);
        SingleArmPolicy p(c);
        double excess = 0.0;
        bool bound_ok = true;
        for (long t = 1; t <= n; ++t) {
            const double m = p.allocate();
            p.observe(m, pull(m, nu, rng));
            excess += m - nu;
            bound_ok = bound_ok && p.lower_bound() <= nu;
        }
        REQUIRE(bound_ok);
        CHECK(excess <= c * (std::log(static_cast<double>(n)) + 1.0) + 1e-9);
    }
}
