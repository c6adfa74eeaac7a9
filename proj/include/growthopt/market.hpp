// SPDX-License-Identifier: Apache-2.0
//
// Black-Scholes market primitives: parameter types, the log-wealth flow
// reward, proportional trading costs, and both Merton benchmarks
// (frictionless and with proportional costs).
#pragma once

namespace growthopt {

/// Drift and volatility of the stock. The bond is the numeraire.
struct MarketParams {
    double mu = 0.0;     // drift rate per time unit
    double sigma = 0.0;  // volatility per sqrt time unit

    double merton_ratio() const { return mu / (sigma * sigma); }

    /// Throws std::invalid_argument unless sigma > 0 (and finite inputs).
    void validate() const;

    /// Additionally requires merton_ratio in (0,1); used by the renewal and
    /// optimizer operations whose formulas need an interior Merton ratio.
    void require_interior_ratio() const;
};

/// Proportional transaction cost fraction, gamma in [0,1).
struct CostRate {
    double gamma = 0.0;

    void validate() const;
};

/// No-trade band and growth rate of the Merton problem with proportional
/// costs: 0 < a <= pi* <= b < 1, growth_rate = b sigma^2 (pi* - b/2).
struct CostMertonSolution {
    double a = 0.0;
    double b = 0.0;
    double growth_rate = 0.0;
};

/// Optimal frictionless fraction mu/sigma^2.
double merton_fraction(const MarketParams& mp);

/// Frictionless optimal growth rate mu^2 / (2 sigma^2).
double merton_growth(const MarketParams& mp);

/// Instantaneous log-wealth drift g(x) = x (mu - sigma^2 x / 2) at risky
/// fraction x.
double g_flow(double x, const MarketParams& mp);

/// Log-wealth change from rebalancing the risky fraction from x to y under
/// proportional costs:
///   log((1 - gamma x)/(1 - gamma y))  for y < x (sell),
///   log((1 + gamma x)/(1 + gamma y))  for y >= x (buy).
/// Always <= 0, zero iff x == y or gamma == 0.
double trade_cost(double x, double y, CostRate gamma);

/// Cycle reward of a rebalance from pi to eta:
///   q(pi, eta) = log((1 - eta)/(1 - pi)) + trade_cost(pi, eta, gamma).
double rebalance_reward(double pi, double eta, CostRate gamma);

/// The function whose zero above pi* locates the upper no-trade boundary of
/// the proportional-cost Merton problem:
///   f(x) = ((2 pi* - x)/x)^(2 pi*/(2 pi* - 1))
///        * ((1 - 2 pi* + x)/(1 - x))^(2 (1 - pi*)/(2 pi* - 1))
///        - 1 - 2 gamma/(1 - gamma).
/// Evaluated in log space. Domain: x in (max(0, 2 pi* - 1), min(2 pi*, 1)).
/// Throws std::domain_error outside the domain and for pi* == 1/2 (the
/// exponents are singular there).
double cost_f(double x, double pi_star, CostRate gamma);

/// Solve the proportional-cost Merton problem: b is the zero of cost_f on
/// (pi*, min(2 pi*, 1)) found by bracketed root finding, a follows from the
/// closed formula, growth_rate = b sigma^2 (pi* - b/2). gamma == 0 returns
/// a = b = pi* and the frictionless rate without root finding.
CostMertonSolution merton_with_costs(const MarketParams& mp, CostRate gamma);

}  // namespace growthopt
