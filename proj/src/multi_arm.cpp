#include "allocbandit/multi_arm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace allocbandit {

namespace {
// Remaining resource within this distance of zero is treated as exhausted.
constexpr double kResourceTol = 1e-12;
} // namespace

double headroom(double det_lb, double overshoot, double c) {
    if (det_lb == 0.0)
        return 0.0;
    return c * det_lb * std::exp(-overshoot / (c * det_lb));
}

double zeta(long t, int arm_count) {
    // -ln(eps) with eps = t^-3 K^-1
    const double neg_log_eps =
        3.0 * std::log(static_cast<double>(t)) + std::log(static_cast<double>(arm_count));
    const double root = std::sqrt(0.5) + std::sqrt(0.5 + neg_log_eps);
    return root * root;
}

double prob_lower_bound(double counted_alloc, double counted_succ, double z) {
    if (counted_alloc <= 0.0)
        return 0.0;
    const double half_width = z / (2.0 * counted_alloc);
    const double root = std::sqrt(half_width) + std::sqrt(half_width + counted_succ / counted_alloc);
    return 1.0 / (root * root);
}

MultiArmPolicy::MultiArmPolicy(int arm_count, double c) : arm_count_(arm_count), c_(c) {
    if (arm_count < 1)
        throw std::invalid_argument("MultiArmPolicy: need at least one arm");
    if (!(c > 2.0))
        throw std::invalid_argument("MultiArmPolicy: c must be > 2");
    det_lb_.assign(arm_count, 0.0);
    prob_lb_.assign(arm_count, 0.0);
    overshoot_.assign(arm_count, 0.0);
    counted_alloc_.assign(arm_count, 0.0);
    counted_succ_.assign(arm_count, 0.0);
}

std::vector<double> MultiArmPolicy::allocate(RngStream& coin_rng, StepReport* report) const {
    const long t = rounds_done_ + 1;
    const int K = arm_count_;

    std::vector<int> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ka = std::max(det_lb_[a], prob_lb_[a]);
        const double kb = std::max(det_lb_[b], prob_lb_[b]);
        if (ka != kb)
            return ka < kb;
        return a < b;
    });

    if (report) {
        report->arms.assign(K, ArmStep{});
        report->epsilon = std::pow(static_cast<double>(t), -3.0) / K;
        report->zeta = zeta(t, K);
    }

    // 1/(K 2^(t-1)); ldexp underflows to 0 for enormous t, which only matters
    // for arms that never failed once in over a thousand halving rounds.
    const double init_amount = std::ldexp(1.0 / K, -static_cast<int>(std::min<long>(t - 1, 2000)));

    std::vector<double> alloc(K, 0.0);
    double res = 1.0;
    for (int k : order) {
        const double dl = det_lb_[k];
        const double r = headroom(dl, overshoot_[k], c_);
        double m;
        AllocCase label;
        int coin = -1;
        if (dl == 0.0) {
            label = AllocCase::Init;
            m = std::min(res, init_amount);
        } else if (res >= dl + r) {
            label = AllocCase::Full;
            m = dl + r;
        } else if (dl < res && res < dl + r) {
            label = AllocCase::Coin;
            coin = coin_rng.coin() ? 1 : 0;
            m = coin ? res : dl;
        } else {
            label = AllocCase::Remainder;
            m = res;
        }
        alloc[k] = m;
        res -= m;
        if (res < kResourceTol)
            res = 0.0;
        if (report) {
            auto& step = report->arms[k];
            step.amount = m;
            step.label = label;
            step.headroom = r;
            step.coin = coin;
        }
    }
    if (report)
        report->leftover = res;
    return alloc;
}

void MultiArmPolicy::observe(std::span<const double> alloc, const OutcomeVector& outcomes) {
    const int K = arm_count_;
    if (static_cast<int>(alloc.size()) != K || static_cast<int>(outcomes.size()) != K)
        throw std::invalid_argument("MultiArmPolicy::observe: shape mismatch");

    const long t = rounds_done_ + 1;
    for (int k = 0; k < K; ++k) {
        const double before = det_lb_[k];
        if (outcomes[k] == 0)
            det_lb_[k] = std::max(det_lb_[k], alloc[k]);
        // The overshoot sum excludes the initialization rounds (det_lb was 0).
        if (before > 0.0)
            overshoot_[k] += std::max(0.0, alloc[k] - before);
        if (alloc[k] <= before) {
            counted_alloc_[k] += alloc[k];
            counted_succ_[k] += outcomes[k];
        }
    }
    const double z = zeta(t, K);
    for (int k = 0; k < K; ++k)
        prob_lb_[k] = prob_lower_bound(counted_alloc_[k], counted_succ_[k], z);
    rounds_done_ = t;
}

MultiArmPolicy MultiArmPolicy::restore(double c, long rounds_done,
                                       std::vector<double> det_lb, std::vector<double> prob_lb,
                                       std::vector<double> overshoot,
                                       std::vector<double> counted_alloc,
                                       std::vector<double> counted_succ) {
    const int K = static_cast<int>(det_lb.size());
    if (static_cast<int>(prob_lb.size()) != K || static_cast<int>(overshoot.size()) != K ||
        static_cast<int>(counted_alloc.size()) != K || static_cast<int>(counted_succ.size()) != K)
        throw std::invalid_argument("MultiArmPolicy::restore: shape mismatch");
    MultiArmPolicy p(K, c);
    p.rounds_done_ = rounds_done;
    p.det_lb_ = std::move(det_lb);
    p.prob_lb_ = std::move(prob_lb);
    p.overshoot_ = std::move(overshoot);
    p.counted_alloc_ = std::move(counted_alloc);
    p.counted_succ_ = std::move(counted_succ);
    return p;
}

} // namespace allocbandit
