// SPDX-License-Identifier: Apache-2.0
//
// Discrete-time reference investors: equidistant rebalancing every h time
// units (quadrature or Taylor-moment evaluation of the one-period problem)
// and Poisson-clock trading with intensity lambda (asymptotic formula).
#pragma once

#include "growthopt/market.hpp"

namespace growthopt {

enum class BaselineMethod { quadrature, taylor, formula };

struct BaselineResult {
    double h_or_lambda = 0.0;      // period length h, or intensity lambda
    double growth_rate = 0.0;
    double optimal_fraction = 0.0; // one-period optimal fraction (h-investor)
    BaselineMethod method = BaselineMethod::quadrature;
};

/// k-th moment of the one-period stock return
///   Z(h) = exp(sigma W_h + (mu - sigma^2/2) h):
///   E[Z^k] = exp(k (mu - sigma^2/2) h + k^2 sigma^2 h / 2).
double period_return_moment(int k, const MarketParams& mp, double h);

/// One-period log-utility value A(h) = sup_{a in [0,1]} E log(a Z + 1 - a)
/// and its maximizer. Expectation by Gauss-Hermite quadrature over the
/// normal driver of Z (>= 64 nodes), maximization by golden section.
struct PeriodValue {
    double value = 0.0;     // A(h)
    double fraction = 0.0;  // a*
};
PeriodValue a_of_h(const MarketParams& mp, double h);

/// Taylor-moment approximation of A(h):
///   A(h) ~ sup_a sum_{k=1..order} (-1)^{k+1} E[Y^k] / k,  Y = a (Z - 1),
/// with E[Y^k] expanded through period_return_moment. Requires order >= 2.
PeriodValue a_of_h_taylor(const MarketParams& mp, double h, int order);

/// Growth rate A(h)/h of the investor who rebalances every h time units.
BaselineResult h_investor_growth(const MarketParams& mp, double h);

/// Asymptotic growth rate of the Poisson-clock investor:
///   V^M - mu^2 (1 - mu/sigma^2)^2 / (2 lambda).
/// An approximation for large lambda; flagged method = formula.
BaselineResult lambda_investor_growth(const MarketParams& mp, double lambda);

}  // namespace growthopt
