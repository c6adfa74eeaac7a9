// SPDX-License-Identifier: Apache-2.0

#include "growthopt/renewal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace growthopt {

namespace {

// Branch switch threshold: below this |2 pi* - 1| the power form of h0/h1
// loses precision, so the symmetric-case formulas take over.
constexpr double kHalfBranchTol = 1e-9;

void check_fraction(double x, const char* who) {
    if (!(x > 0.0 && x < 1.0))
        throw std::invalid_argument(std::string(who) + ": fraction must lie in (0,1)");
}

double ell(double x) { return std::log((1.0 - x) / x); }

// ell(x) - ell(y) without cancellation for x near y.
double ell_diff(double x, double y) { return std::log1p((y - x) / (x * (1.0 - y))); }

}  // namespace

void BoundaryPolicy::validate() const {
    if (!(0.0 < a && a < alpha && alpha <= beta && beta < b && b < 1.0))
        throw std::invalid_argument(
            "BoundaryPolicy: parameters must satisfy 0 < a < alpha <= beta < b < 1");
}

double scale_h0(double x, const MarketParams& mp) {
    mp.require_interior_ratio();
    check_fraction(x, "scale_h0");
    const double p = 2.0 * mp.merton_ratio() - 1.0;
    if (std::abs(p) < kHalfBranchTol) return ell(x);
    return -std::exp(p * ell(x));
}

double time_h1(double x, const MarketParams& mp) {
    mp.require_interior_ratio();
    check_fraction(x, "time_h1");
    const double s2 = mp.sigma * mp.sigma;
    const double p = 2.0 * mp.merton_ratio() - 1.0;
    const double lx = ell(x);
    if (std::abs(p) < kHalfBranchTol) return lx * lx / s2;
    return -2.0 * lx / (s2 * p);
}

double h0_difference(double x, double y, const MarketParams& mp) {
    mp.require_interior_ratio();
    check_fraction(x, "h0_difference");
    check_fraction(y, "h0_difference");
    const double p = 2.0 * mp.merton_ratio() - 1.0;
    if (std::abs(p) < kHalfBranchTol) return ell_diff(x, y);
    return -std::exp(p * ell(y)) * std::expm1(p * ell_diff(x, y));
}

double h1_difference(double x, double y, const MarketParams& mp) {
    mp.require_interior_ratio();
    check_fraction(x, "h1_difference");
    check_fraction(y, "h1_difference");
    const double s2 = mp.sigma * mp.sigma;
    const double p = 2.0 * mp.merton_ratio() - 1.0;
    if (std::abs(p) < kHalfBranchTol) return ell_diff(x, y) * (ell(x) + ell(y)) / s2;
    return -2.0 * ell_diff(x, y) / (s2 * p);
}

double exit_probability_upper(double pi, double a, double b, const MarketParams& mp) {
    mp.require_interior_ratio();
    check_fraction(a, "exit_probability_upper");
    check_fraction(b, "exit_probability_upper");
    if (!(a < b)) throw std::invalid_argument("exit_probability_upper: need a < b");
    if (!(pi >= a && pi <= b))
        throw std::invalid_argument("exit_probability_upper: pi outside [a,b]");
    return h0_difference(pi, a, mp) / h0_difference(b, a, mp);
}

double expected_exit_time(double pi, double a, double b, const MarketParams& mp) {
    const double u = exit_probability_upper(pi, a, b, mp);
    return u * h1_difference(b, a, mp) - h1_difference(pi, a, mp);
}

double invariant_distribution(const BoundaryPolicy& policy, const MarketParams& mp) {
    policy.validate();
    mp.require_interior_ratio();
    const double upper = h0_difference(policy.b, policy.beta, mp);
    const double lower = h0_difference(policy.alpha, policy.a, mp);
    const double denom = lower + upper;
    if (denom == 0.0)
        throw std::invalid_argument(
            "invariant_distribution: degenerate policy (alpha = a and beta = b)");
    return upper / denom;
}

double expected_cycle_time(const BoundaryPolicy& policy, const MarketParams& mp) {
    const double p = invariant_distribution(policy, mp);
    return p * h1_difference(policy.a, policy.alpha, mp) +
           (1.0 - p) * h1_difference(policy.b, policy.beta, mp);
}

RenewalSummary policy_growth_rate(const BoundaryPolicy& policy, const MarketParams& mp,
                                  CostRate gamma) {
    gamma.validate();
    const double p = invariant_distribution(policy, mp);
    const double cycle = p * h1_difference(policy.a, policy.alpha, mp) +
                         (1.0 - p) * h1_difference(policy.b, policy.beta, mp);
    const double reward = p * rebalance_reward(policy.a, policy.alpha, gamma) +
                          (1.0 - p) * rebalance_reward(policy.b, policy.beta, gamma);
    RenewalSummary out;
    out.nu_alpha = p;
    out.expected_cycle_time = cycle;
    out.growth_rate = reward / cycle;
    out.trade_frequency = 1.0 / cycle;
    return out;
}

}  // namespace growthopt
