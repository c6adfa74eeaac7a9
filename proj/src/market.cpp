// SPDX-License-Identifier: Apache-2.0

#include "growthopt/market.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "growthopt/numerics.hpp"

namespace growthopt {

void MarketParams::validate() const {
    if (!std::isfinite(mu) || !std::isfinite(sigma))
        throw std::invalid_argument("MarketParams: mu and sigma must be finite");
    if (sigma <= 0.0)
        throw std::invalid_argument("MarketParams: sigma must be > 0");
}

void MarketParams::require_interior_ratio() const {
    validate();
    const double ps = merton_ratio();
    if (!(ps > 0.0 && ps < 1.0))
        throw std::invalid_argument("MarketParams: merton_ratio mu/sigma^2 = " +
                                    std::to_string(ps) + " must lie in (0,1)");
}

void CostRate::validate() const {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw std::invalid_argument("CostRate: gamma must lie in [0,1)");
}

double merton_fraction(const MarketParams& mp) {
    mp.validate();
    return mp.mu / (mp.sigma * mp.sigma);
}

double merton_growth(const MarketParams& mp) {
    mp.validate();
    return mp.mu * mp.mu / (2.0 * mp.sigma * mp.sigma);
}

double g_flow(double x, const MarketParams& mp) {
    return x * (mp.mu - 0.5 * mp.sigma * mp.sigma * x);
}

double trade_cost(double x, double y, CostRate gamma) {
    const double g = gamma.gamma;
    if (y < x) return std::log1p(-g * x) - std::log1p(-g * y);
    return std::log1p(g * x) - std::log1p(g * y);
}

double rebalance_reward(double pi, double eta, CostRate gamma) {
    return std::log1p(-eta) - std::log1p(-pi) + trade_cost(pi, eta, gamma);
}

double cost_f(double x, double pi_star, CostRate gamma) {
    if (std::abs(2.0 * pi_star - 1.0) < 1e-12)
        throw std::domain_error("cost_f: exponents are singular at pi* = 1/2");
    const double lo = std::max(0.0, 2.0 * pi_star - 1.0);
    const double hi = std::min(2.0 * pi_star, 1.0);
    if (!(x > lo && x < hi))
        throw std::domain_error("cost_f: x outside admissible interval (" +
                                std::to_string(lo) + ", " + std::to_string(hi) + ")");
    const double denom = 2.0 * pi_star - 1.0;
    const double e1 = 2.0 * pi_star / denom;
    const double e2 = 2.0 * (1.0 - pi_star) / denom;
    const double log_product = e1 * std::log((2.0 * pi_star - x) / x) +
                               e2 * std::log((1.0 - 2.0 * pi_star + x) / (1.0 - x));
    return std::expm1(log_product) - 2.0 * gamma.gamma / (1.0 - gamma.gamma);
}

CostMertonSolution merton_with_costs(const MarketParams& mp, CostRate gamma) {
    mp.validate();
    gamma.validate();
    const double ps = mp.merton_ratio();
    if (!(ps > 0.0 && ps < 1.0))
        throw std::invalid_argument("merton_with_costs: merton ratio must lie in (0,1)");

    if (gamma.gamma == 0.0)
        return {ps, ps, merton_growth(mp)};
    if (std::abs(2.0 * ps - 1.0) < 1e-12)
        throw std::domain_error(
            "merton_with_costs: pi* = 1/2 with gamma > 0 is a singular case of f");

    constexpr double kEdge = 1e-9;
    const double lo = ps + kEdge;
    const double hi = std::min(2.0 * ps, 1.0) - kEdge;
    auto f = [&](double x) { return cost_f(x, ps, gamma); };
    const RootResult root = brent_root(f, lo, hi, 1e-14, 1e-12, 300);
    if (!root.converged)
        throw std::runtime_error("merton_with_costs: root finding for b did not converge");

    const double b = root.x;
    const double a = (2.0 * ps - b) /
                     (1.0 + 2.0 * gamma.gamma / (1.0 - gamma.gamma) * (1.0 - 2.0 * ps + b));
    const double rate = b * mp.sigma * mp.sigma * (ps - 0.5 * b);
    return {a, b, rate};
}

}  // namespace growthopt
