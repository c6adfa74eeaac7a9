// SPDX-License-Identifier: Apache-2.0
//
// Small deterministic numerics toolkit: bracketed root finding, 1D line
// search, derivative-free simplex minimization, adaptive quadrature and
// Gauss-Hermite rules. Everything here is reentrant and allocation-light.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace growthopt {

struct RootResult {
    double x = 0.0;
    double f = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Brent-style bracketed root finding on [lo, hi].
///
/// Requires f(lo) and f(hi) of opposite sign (a zero of either endpoint is
/// accepted as the root). Stops when the bracket width falls below x_tol or
/// |f| falls below f_tol.
RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double x_tol = 1e-14, double f_tol = 0.0, int max_iter = 200);

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Returns the abscissa of the maximum to within x_tol.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol = 1e-10);

/// Grid presearch followed by golden-section refinement. Robust against
/// mild multimodality; deterministic (ties broken by lowest index).
double grid_then_golden_max(const std::function<double(double)>& f, double lo, double hi,
                            int grid_points = 257, double x_tol = 1e-10);

struct SimplexOptions {
    int max_iterations = 4000;
    double x_tol = 1e-10;   // simplex diameter
    double f_tol = 1e-14;   // function value spread
    int restarts = 2;       // re-inflate around the best point and rerun
    double initial_step = 0.02;
};

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead minimization. Deterministic: fixed coefficients, ties broken
/// by index order, fixed restart schedule.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> x0, std::span<const double> step,
                          const SimplexOptions& opts = {});

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40);

struct GaussHermiteRule {
    std::vector<double> nodes;    // roots of the physicists' Hermite polynomial
    std::vector<double> weights;  // sum to sqrt(pi)

    /// Expectation of g(X) for X ~ N(mean, stddev^2).
    double expect(const std::function<double(double)>& g, double mean, double stddev) const;
};

/// Nodes and weights for n-point Gauss-Hermite quadrature (weight e^{-x^2}).
GaussHermiteRule gauss_hermite(int n);

}  // namespace growthopt
