#include "allocbandit/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace allocbandit {

ArmParams::ArmParams(std::vector<double> thresholds) : nu(std::move(thresholds)) {
    if (nu.empty())
        throw std::invalid_argument("ArmParams: need at least one arm");
    for (double v : nu)
        if (!(v > 0.0))
            throw std::invalid_argument("ArmParams: every threshold must be positive");
}

double ArmParams::nu_star() const {
    return *std::min_element(nu.begin(), nu.end());
}

double success_prob(double amount, double nu) {
    if (!(nu > 0.0))
        throw std::invalid_argument("success_prob: threshold must be positive");
    if (amount < 0.0)
        throw std::invalid_argument("success_prob: allocation must be nonnegative");
    return std::min(1.0, amount / nu);
}

int pull(double amount, double nu, RngStream& rng) {
    const double p = success_prob(amount, nu);
    return rng.uniform01() < p ? 1 : 0;
}

OutcomeVector pull_all(std::span<const double> alloc, const ArmParams& params, RngStream& rng) {
    if (alloc.size() != params.nu.size())
        throw std::invalid_argument("pull_all: allocation length does not match arm count");
    OutcomeVector out(alloc.size());
    for (std::size_t k = 0; k < alloc.size(); ++k)
        out[k] = static_cast<std::uint8_t>(pull(alloc[k], params.nu[k], rng));
    return out;
}

} // namespace allocbandit
