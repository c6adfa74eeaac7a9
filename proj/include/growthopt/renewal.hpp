// SPDX-License-Identifier: Apache-2.0
//
// Renewal analysis of constant boundary strategies for the risky-fraction
// diffusion: scale and expected-time functions, exit probabilities and
// times, the two-point invariant distribution of restart locations, cycle
// length, growth rate and trade frequency.
#pragma once

#include "growthopt/market.hpp"

namespace growthopt {

/// Constant boundary strategy: trade when the risky fraction exits (a, b);
/// restart at alpha after a lower exit, at beta after an upper exit.
struct BoundaryPolicy {
    double a = 0.0;      // lower trigger
    double alpha = 0.0;  // lower restart
    double beta = 0.0;   // upper restart
    double b = 0.0;      // upper trigger

    /// Throws std::invalid_argument unless 0 < a < alpha <= beta < b < 1.
    void validate() const;
};

/// Analytic cycle statistics of a constant boundary strategy.
struct RenewalSummary {
    double nu_alpha = 0.0;             // invariant weight of the lower restart point
    double expected_cycle_time = 0.0;  // expected time between trades under nu
    double growth_rate = 0.0;          // long-run log-wealth growth per time unit
    double trade_frequency = 0.0;      // 1 / expected_cycle_time
};

/// Scale function of the fraction diffusion:
///   h0(x) = -((1-x)/x)^(2 pi* - 1)   for pi* != 1/2,
///   h0(x) = log((1-x)/x)             for pi* = 1/2.
/// Strictly monotone on (0,1).
double scale_h0(double x, const MarketParams& mp);

/// Expected-time transform:
///   h1(x) = -2 log((1-x)/x) / (sigma^2 (2 pi* - 1))   for pi* != 1/2,
///   h1(x) = (log((1-x)/x))^2 / sigma^2                for pi* = 1/2.
double time_h1(double x, const MarketParams& mp);

/// h0(x) - h0(y), evaluated through expm1/log1p so nearby arguments do not
/// cancel catastrophically.
double h0_difference(double x, double y, const MarketParams& mp);

/// h1(x) - h1(y), same evaluation discipline as h0_difference.
double h1_difference(double x, double y, const MarketParams& mp);

/// Probability that the fraction started at pi leaves (a,b) through b.
/// Equals (h0(pi)-h0(a)) / (h0(b)-h0(a)); 0 at pi=a, 1 at pi=b.
double exit_probability_upper(double pi, double a, double b, const MarketParams& mp);

/// Expected time for the fraction started at pi in [a,b] to leave (a,b).
/// Zero at both endpoints.
double expected_exit_time(double pi, double a, double b, const MarketParams& mp);

/// Invariant weight nu({alpha}) of the two-point restart distribution:
///   (h0(b)-h0(beta)) / (h0(alpha)-h0(a) + h0(b)-h0(beta)).
double invariant_distribution(const BoundaryPolicy& policy, const MarketParams& mp);

/// Expected cycle length under the invariant distribution:
///   p (h1(a)-h1(alpha)) + (1-p)(h1(b)-h1(beta)),  p = nu({alpha}).
double expected_cycle_time(const BoundaryPolicy& policy, const MarketParams& mp);

/// Full renewal summary: growth rate
///   [nu_a q(a,alpha) + (1-nu_a) q(b,beta)] / expected cycle time
/// and trade frequency 1/cycle time.
RenewalSummary policy_growth_rate(const BoundaryPolicy& policy, const MarketParams& mp,
                                  CostRate gamma);

}  // namespace growthopt
