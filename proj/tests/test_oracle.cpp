#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <cmath>

#include "allocbandit/oracle.hpp"
#include "allocbandit/rng.hpp"

using namespace allocbandit;

TEST_CASE("optimal_profile saturating instance") {
    const OptimalProfile p = optimal_profile(ArmParams({0.4, 0.6}));
    CHECK(p.ell == 2);
    CHECK(p.m_star == std::vector<double>{0.4, 0.6});
    CHECK_FALSE(p.rho.has_value());
    CHECK(p.opt_reward == 2.0);
}

TEST_CASE("optimal_profile partial instance") {
    const OptimalProfile p = optimal_profile(ArmParams({0.5, 0.8}));
    CHECK(p.ell == 1);
    CHECK(p.m_star[0] == doctest::Approx(0.5));
    CHECK(p.m_star[1] == doctest::Approx(0.5));
    REQUIRE(p.rho.has_value());
    CHECK(*p.rho == doctest::Approx(0.5));
    CHECK(p.opt_reward == doctest::Approx(1.625));
}

TEST_CASE("optimal_profile linear family K=50") {
    std::vector<double> nu(50);
    for (int k = 1; k <= 50; ++k)
        nu[k - 1] = 2.0 * k / 625.0;
    const OptimalProfile p = optimal_profile(ArmParams(nu));
    CHECK(p.ell == 24);
    REQUIRE(p.rho.has_value());
    CHECK(*p.rho == doctest::Approx(0.04).epsilon(1e-9));
    CHECK(p.opt_reward == doctest::Approx(24.5).epsilon(1e-9));
}

TEST_CASE("optimal_profile permutation invariance and prefix property") {
    RngStream rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int K = 1 + static_cast<int>(rng.uniform01() * 5);
        std::vector<double> nu(K);
        for (double& v : nu)
            v = rng.uniform(0.1, 1.2);
        const OptimalProfile p = optimal_profile(ArmParams(nu));

        std::vector<double> shuffled = nu;
        for (int i = K - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[static_cast<int>(rng.uniform01() * (i + 1))]);
        const OptimalProfile q = optimal_profile(ArmParams(shuffled));
        CHECK(q.opt_reward == doctest::Approx(p.opt_reward).epsilon(1e-12));
        CHECK(q.ell == p.ell);

        // Fully funded arms form a prefix of the sorted order.
        for (int i = 0; i < K; ++i) {
            const double nu_i = nu[p.order[i]];
            if (i < p.ell)
                CHECK(p.m_star[i] == nu_i);
            else
                CHECK(p.m_star[i] < nu_i);
        }
        double total = 0.0;
        for (double m : p.m_star)
            total += m;
        CHECK(total <= 1.0 + kBudgetTol);
    }
}

TEST_CASE("optimal_profile rejects empty input") {
    CHECK_THROWS_AS(optimal_profile(ArmParams(std::vector<double>{})), std::invalid_argument);
}

TEST_CASE("instant_regret") {
    const OptimalProfile sat = optimal_profile(ArmParams({0.4, 0.6}));
    CHECK(instant_regret(sat, OutcomeVector{1, 1}) == 0.0);

    const OptimalProfile part = optimal_profile(ArmParams({0.5, 0.8}));
    CHECK(instant_regret(part, OutcomeVector{1, 0}) == doctest::Approx(0.625));
    CHECK(instant_regret(part, OutcomeVector{1, 1}) == doctest::Approx(-0.375));
    CHECK_THROWS_AS(instant_regret(part, OutcomeVector{1}), std::invalid_argument);
}

TEST_CASE("instant_regret is at most ell + 1") {
    RngStream rng(57);
    for (int trial = 0; trial < 200; ++trial) {
        const int K = 1 + static_cast<int>(rng.uniform01() * 5);
        std::vector<double> nu(K);
        for (double& v : nu)
            v = rng.uniform(0.1, 1.2);
        const OptimalProfile p = optimal_profile(ArmParams(nu));
        OutcomeVector out(K);
        for (auto& x : out)
            x = rng.coin() ? 1 : 0;
        CHECK(instant_regret(p, out) <= p.ell + 1.0);
    }
}

TEST_CASE("single_arm_regret") {
    CHECK(single_arm_regret(0.6, 0.6, 1) == doctest::Approx(0.0));
    CHECK(single_arm_regret(0.6, 0.7, 1) == doctest::Approx(0.1));
    CHECK(single_arm_regret(0.6, 0.5, 0) == doctest::Approx(0.9));
    CHECK_THROWS_AS(single_arm_regret(0.0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(single_arm_regret(1.5, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(single_arm_regret(0.6, 0.5, 2), std::invalid_argument);
}

TEST_CASE("brute_force_opt_reward examples") {
    CHECK(brute_force_opt_reward(ArmParams({0.4, 0.6}), 0.001) == 2.0);
    CHECK(brute_force_opt_reward(ArmParams({0.5, 0.8}), 0.001) ==
          doctest::Approx(1.625).epsilon(0.002));

    const ArmParams three({0.7, 0.9, 0.9});
    const double bf = brute_force_opt_reward(three, 0.005);
    const double exact = optimal_profile(three).opt_reward;
    CHECK(std::abs(bf - exact) < 0.02);

    CHECK_THROWS_AS(brute_force_opt_reward(ArmParams({.1, .1, .1, .1, .1}), 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_opt_reward(ArmParams({0.5}), 0.2), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_opt_reward(ArmParams({0.5}), 0.0), std::invalid_argument);
}

TEST_CASE("brute force agrees with the recursion on random instances") {
    RngStream rng(17);
    const double step = 0.01;
    for (int trial = 0; trial < 50; ++trial) {
        const int K = 1 + static_cast<int>(rng.uniform01() * 3);
        std::vector<double> nu(K);
        for (double& v : nu)
            v = rng.uniform(0.35, 1.6);
        const ArmParams params(nu);
        const double bf = brute_force_opt_reward(params, step);
        const double exact = optimal_profile(params).opt_reward;
        CHECK(bf <= exact + 1e-9); // grid allocations are feasible
        CHECK(std::abs(bf - exact) <= step * K);
    }
}
