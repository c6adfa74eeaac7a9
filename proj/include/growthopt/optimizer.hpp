// SPDX-License-Identifier: Apache-2.0
//
// Optimal relaxed strategies for a trade-frequency budget: the closed-form
// symmetric solution (zero costs, Merton ratio 1/2), the general constrained
// maximization of the renewal growth rate over boundary policies with
// expected cycle time pinned to h, and a numerical checker for the
// verification conditions in the explicit case.
#pragma once

#include <optional>

#include "growthopt/market.hpp"
#include "growthopt/renewal.hpp"

namespace growthopt {

struct SolverOptions {
    int starts = 12;              // deterministic multi-starts seeded around pi*
    int max_iterations = 6000;    // simplex iterations per start
    int restarts = 3;             // simplex restart schedule
    double x_tol = 1e-10;
    double f_tol = 5e-15;
    double boundary_margin = 1e-4;     // box constraint inset from {0,1}
    double frequency_rel_tol = 1e-8;   // |cycle - h| / h acceptance
};

/// An optimized policy for a frequency budget h.
struct RelaxedSolution {
    BoundaryPolicy policy;
    double h = 0.0;                 // target average inter-trade time
    double growth_rate = 0.0;       // V(h) attained by the policy
    RenewalSummary summary;
    bool converged = false;
    double residual_frequency = 0.0;  // |expected cycle time - h|

    // Decomposition V = lambda + c/h; populated in the explicit symmetric
    // case only.
    std::optional<double> lambda_diag;
    std::optional<double> c_diag;
};

/// Residuals of the verification conditions evaluated at a policy.
struct VerificationReport {
    double max_ode_residual = 0.0;               // sup |L v + g - lambda| on (a,b)
    double smooth_fit_residual_lower = 0.0;      // |v(alpha)-v(a)+Gamma(a,alpha)-c|
    double smooth_fit_residual_upper = 0.0;      // |v(beta)-v(b)+Gamma(b,beta)-c|
    double intervention_inequality_margin = 0.0; // min slack of c - [v(y)-v(x)+Gamma(x,y)]
    double frequency_residual = 0.0;             // |expected cycle time - h|
};

/// Closed-form optimum for mu = sigma^2/2 (Merton ratio 1/2) and zero costs:
///   b = e^{sigma sqrt h} / (1 + e^{sigma sqrt h}),  a = 1 - b,
///   alpha = beta = 1/2,
///   V(h) = [log(1/2) - log(e^{sigma sqrt h / 2} / (1 + e^{sigma sqrt h}))] / h.
/// Throws std::invalid_argument unless pi* = 1/2 and h > 0.
RelaxedSolution symmetric_solution(const MarketParams& mp, double h);

/// Maximize the renewal growth rate over constant boundary policies with
/// expected cycle time equal to h. The upper trigger b is eliminated by
/// monotone root finding on the cycle time; a deterministic multi-start
/// simplex searches (a, alpha, beta), both with alpha = beta tied and free.
/// converged = false if no start meets the tolerances.
RelaxedSolution solve_relaxed(const MarketParams& mp, CostRate gamma, double h,
                              const SolverOptions& opts = {});

/// Numerically check the verification conditions at the explicit symmetric
/// solution for budget h, on a grid of grid_size points. Preconditions:
/// pi* = 1/2, zero costs.
VerificationReport verify_explicit(const MarketParams& mp, double h, int grid_size);

/// Efficiency ratio v / v_ref. Throws std::invalid_argument for v_ref <= 0.
double efficiency(double v, double v_ref);

}  // namespace growthopt
