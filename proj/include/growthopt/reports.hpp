// SPDX-License-Identifier: Apache-2.0
//
// Report generation: efficiency curves over a grid of frequency budgets,
// CSV serialization (10 significant digits, byte-stable), and a minimal
// self-contained SVG line plot.
#pragma once

#include <string>
#include <vector>

#include "growthopt/market.hpp"
#include "growthopt/optimizer.hpp"

namespace growthopt {

/// One grid point of the zero-cost comparison (Figures 1-2 style):
/// growth rates of the relaxed, equidistant and Poisson investors with
/// their efficiencies against the frictionless Merton rate. The Poisson
/// intensity is 1/h.
struct EfficiencyRow {
    double h = 0.0;
    double v_o = 0.0, v_h = 0.0, v_lambda = 0.0;
    double e_o = 0.0, e_h = 0.0, e_lambda = 0.0;
};

/// One grid point of the with-costs comparison (Figures 3-4 style):
/// relaxed growth rate, efficiency against the cost-Merton rate, and the
/// optimal boundaries.
struct CostEfficiencyRow {
    double h = 0.0;
    double v_o = 0.0;
    double e_o_c = 0.0;
    double a = 0.0, alpha = 0.0, beta = 0.0, b = 0.0;
};

/// Log-spaced grid of n points on [h_min, h_max]; n = 1 needs
/// h_min == h_max. Throws std::invalid_argument for empty/invalid grids.
std::vector<double> log_spaced_grid(double h_min, double h_max, int n);

std::vector<EfficiencyRow> efficiency_curve(const MarketParams& mp,
                                            const std::vector<double>& h_grid,
                                            const SolverOptions& opts = {});

std::vector<CostEfficiencyRow> cost_efficiency_curve(const MarketParams& mp, CostRate gamma,
                                                     const std::vector<double>& h_grid,
                                                     const SolverOptions& opts = {});

/// Header "h,V_o,V_h,V_lambda,E_o,E_h,E_lambda" plus one row per grid point.
std::string to_csv(const std::vector<EfficiencyRow>& rows);

/// Header "h,V_o,E_o_c,a,alpha,beta,b" plus one row per grid point.
std::string to_csv(const std::vector<CostEfficiencyRow>& rows);

/// Self-contained SVG polyline plot of named series against x.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<double>& x,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series);

}  // namespace growthopt
