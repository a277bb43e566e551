#pragma once

#include <utility>
#include <vector>

#include "allocbandit/env.hpp"

namespace allocbandit {

// H(n) = sum_{i<=n} 1/i, summed directly in ascending order. H(0) = 0.
double harmonic(long n);

// Regret guarantee of the single-arm allocator: c^2/(c-1) (ln n + 1).
double single_arm_upper(double c, double n);

// Parameter-free guarantees of the exclusive allocator:
// (excess, failures) = (c K (ln n + 1), c/(c-1) K (ln n + 1)).
std::pair<double, double> exclusive_upper(double c, int arm_count, double n);

// Gap-dependent form of the exclusive guarantees with a caller-supplied
// constant C: per arm, min(c ln n, C ln(1/(nu_k - nu*)) + C) for the excess
// and min(c/(c-1) ln n, same gap term) for the failures; arms at nu* take
// the ln n branch.
std::pair<double, double> exclusive_gap_upper(double c, const ArmParams& params, double n,
                                              double C);

// Expected-regret lower bound on the hard-instance family with 2r arms:
// (r/32) (H(n-1) - pi^2/12).
double lb_main_value(int r, long n);

// KL divergence of Bernoulli(p) from Bernoulli(q), natural log, p,q in (0,1).
double kl_bernoulli(double p, double q);

// Asymptotic regret constant sum_{k>ell, nu_k>nu*} (1/nu* - 1/nu_k) / D(1/nu_k || 1/nu*),
// with nu* the minimum over arms past position ell. Requires nu_k > 1 there.
double lb_rem_value(const ArmParams& params, int ell);

// C(a) = max( 4(1-1/a)^2 / (4(1-1/a)^2 + 1),  (1/a) / (-4 ln(1-1/a)) ), a > 1.
double c_factor(double a);

// Shape of the main upper bound, C ell ln n + C1 ln n + C2, with the leading
// constant C supplied by the caller. C1 = 0 when ell = K; ell = 0 with
// ell < K is rejected because the C1 term needs a saturated arm.
double multi_arm_upper_shape(const ArmParams& params, int ell, double n, double C);

} // namespace allocbandit
