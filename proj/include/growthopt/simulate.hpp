// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo simulation of the impulse-controlled risky-fraction process:
// exact log-odds stepping of the uncontrolled diffusion, first-exit sampling
// with optional Brownian-bridge crossing detection, and full policy
// simulation with proportional-cost wealth accounting.
#pragma once

#include <cstddef>
#include <cstdint>

#include "growthopt/market.hpp"
#include "growthopt/renewal.hpp"

namespace growthopt {

struct SimConfig {
    double dt = 1e-3;
    double horizon = 500.0;        // total simulated time per path
    std::size_t paths = 1000;
    std::uint64_t seed = 1;
    bool bridge_correction = true; // Brownian-bridge crossing check between grid points
    int threads = 0;               // 0 = hardware concurrency
    bool accounting_cross_check = false;  // also run explicit share/bond bookkeeping

    void validate() const;
};

struct SimResult {
    double growth_rate_mean = 0.0, growth_rate_se = 0.0;
    double trade_frequency_mean = 0.0, trade_frequency_se = 0.0;
    double exit_time_mean = 0.0, exit_time_se = 0.0;
    double upper_exit_fraction = 0.0, upper_exit_fraction_se = 0.0;
    std::size_t paths_used = 0;
    double exhausted_fraction = 0.0;  // paths that hit the horizon before exiting
    bool flagged = false;             // exhausted_fraction > 1%
    double accounting_gap_max = 0.0;  // max |prop-repr log-wealth - bookkeeping| per unit time
};

/// One exact transition of the uncontrolled fraction over dt: the log-odds
/// Y = log(pi/(1-pi)) advances by (mu - sigma^2/2) dt + sigma sqrt(dt) draw
/// and is mapped back. The result always stays in (0,1).
double step_fraction(double pi, double dt, double normal_draw, const MarketParams& mp);

/// First exit of the fraction from (a,b) started at pi0: per-path exit time
/// and side, means and standard errors across paths. Paths that never exit
/// within the horizon are counted in exhausted_fraction and excluded from
/// the exit-time statistics.
SimResult simulate_exit(double pi0, double a, double b, const MarketParams& mp,
                        const SimConfig& cfg);

/// Simulate the constant boundary policy: the fraction diffuses, is
/// restarted at alpha/beta when it exits (a,b), and log-wealth accumulates
/// flow reward, martingale increments and the trade-cost jumps. growth_rate
/// is terminal log-wealth over the horizon; trade_frequency is trades over
/// horizon.
SimResult simulate_policy(const BoundaryPolicy& policy, const MarketParams& mp,
                          CostRate gamma, const SimConfig& cfg);

}  // namespace growthopt
