// SPDX-License-Identifier: Apache-2.0

#include "growthopt/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "growthopt/numerics.hpp"

namespace growthopt {

namespace {

constexpr double kHalfBranchTol = 1e-9;

bool is_symmetric_case(const MarketParams& mp) {
    return std::abs(2.0 * mp.merton_ratio() - 1.0) < kHalfBranchTol;
}

// Objective machinery shared by the multi-start search. The upper trigger b
// is eliminated: for fixed (a, alpha, beta) it is the root of
// expected_cycle_time(a, alpha, beta, b) = h in (beta, 1 - margin).
struct ConstrainedObjective {
    const MarketParams& mp;
    CostRate gamma;
    double h;
    double margin;     // box inset
    double gap = 1e-6; // minimum a < alpha separation

    double cycle_time(double a, double al, double be, double b) const {
        const double up = h0_difference(b, be, mp);
        const double lo = h0_difference(al, a, mp);
        const double p = up / (lo + up);
        return p * h1_difference(a, al, mp) + (1.0 - p) * h1_difference(b, be, mp);
    }

    // Smallest b in (lo_edge, hi) with cycle time h; NaN if none found.
    double solve_b(double a, double al, double be) const {
        const double hi = 1.0 - margin;
        const double lo_edge = std::max(al, be);
        if (lo_edge >= hi) return std::numeric_limits<double>::quiet_NaN();

        constexpr int kScan = 64;
        double prev_b = lo_edge + 1e-12 * (1.0 - lo_edge);
        if (cycle_time(a, al, be, prev_b) - h >= 0.0)
            return prev_b;  // already at (or past) the budget
        for (int j = 1; j <= kScan; ++j) {
            const double b = lo_edge + (hi - lo_edge) * j / kScan;
            const double f = cycle_time(a, al, be, b) - h;
            if (f >= 0.0) {
                auto fn = [&](double x) { return cycle_time(a, al, be, x) - h; };
                const RootResult r = brent_root(fn, prev_b, b, 1e-15, 0.0, 200);
                return r.x;
            }
            prev_b = b;
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

    double growth(double a, double al, double be, double b, double* cycle_out) const {
        const double up = h0_difference(b, be, mp);
        const double lo = h0_difference(al, a, mp);
        const double p = up / (lo + up);
        const double cycle = p * h1_difference(a, al, mp) +
                             (1.0 - p) * h1_difference(b, be, mp);
        const double reward = p * rebalance_reward(a, al, gamma) +
                              (1.0 - p) * rebalance_reward(b, be, gamma);
        if (cycle_out) *cycle_out = cycle;
        return reward / cycle;
    }

    // Negative growth with penalty shaping outside the feasible box; tied
    // parameterization uses alpha = beta.
    double operator()(std::span<const double> x, bool tied) const {
        const double a = x[0];
        const double al = x[1];
        const double be = tied ? x[1] : x[2];

        double viol = 0.0;
        viol += std::max(0.0, margin - a);
        viol += std::max(0.0, a + gap - al);
        if (!tied) viol += std::max(0.0, al - be);
        viol += std::max(0.0, be - (1.0 - 2.0 * margin));
        if (viol > 0.0) return 1e6 * (1.0 + viol);

        const double b = solve_b(a, al, be);
        if (!std::isfinite(b)) {
            // cycle time cannot reach h for this (a, alpha, beta); grade the
            // shortfall so the simplex is steered back toward feasibility
            const double t_max = cycle_time(a, al, be, 1.0 - margin);
            const double shortfall = std::max(0.0, (h - t_max) / h);
            return 1e4 * (1.0 + shortfall);
        }
        return -growth(a, al, be, b, nullptr);
    }
};

struct Candidate {
    double value = -std::numeric_limits<double>::infinity();
    BoundaryPolicy policy;
    bool feasible = false;
};

bool better(const Candidate& lhs, const Candidate& rhs) {
    if (lhs.value != rhs.value) return lhs.value > rhs.value;
    const auto key = [](const BoundaryPolicy& p) {
        return std::array<double, 4>{p.a, p.alpha, p.beta, p.b};
    };
    return key(lhs.policy) < key(rhs.policy);
}

}  // namespace

RelaxedSolution symmetric_solution(const MarketParams& mp, double h) {
    mp.require_interior_ratio();
    if (!is_symmetric_case(mp))
        throw std::invalid_argument(
            "symmetric_solution: requires Merton ratio 1/2 (mu = sigma^2/2)");
    if (!(h > 0.0)) throw std::invalid_argument("symmetric_solution: h must be > 0");

    const double s = mp.sigma * std::sqrt(h);
    const double b = 1.0 / (1.0 + std::exp(-s));
    const double a = 1.0 - b;
    // V(h) = [log(1/2) - log(e^{s/2}/(1+e^s))]/h = log(cosh(s/2))/h
    const double growth = (std::log1p(std::exp(s)) - 0.5 * s - std::numbers::ln2) / h;

    RelaxedSolution out;
    out.policy = {a, 0.5, 0.5, b};
    out.h = h;
    out.growth_rate = growth;
    out.summary.nu_alpha = 0.5;
    out.summary.expected_cycle_time = expected_cycle_time(out.policy, mp);
    out.summary.growth_rate = growth;
    out.summary.trade_frequency = 1.0 / out.summary.expected_cycle_time;
    out.residual_frequency = std::abs(out.summary.expected_cycle_time - h);
    out.converged = true;
    const double lambda = mp.sigma * mp.sigma * (b - 0.5) / (2.0 * s);
    out.lambda_diag = lambda;
    out.c_diag = (growth - lambda) * h;
    return out;
}

RelaxedSolution solve_relaxed(const MarketParams& mp, CostRate gamma, double h,
                              const SolverOptions& opts) {
    mp.require_interior_ratio();
    gamma.validate();
    if (!(h > 0.0)) throw std::invalid_argument("solve_relaxed: h must be > 0");

    const double ps = mp.merton_ratio();
    const double margin = opts.boundary_margin;
    const ConstrainedObjective obj{mp, gamma, h, margin};

    // deterministic starts around pi*: a width ladder crossed with small
    // center shifts, alternating the tied (alpha = beta) and free searches
    const double scale =
        std::clamp(mp.sigma * std::sqrt(h), 5.0 * margin, 0.2 * std::min(ps, 1.0 - ps));
    const std::array<double, 5> widths = {0.6, 1.0, 1.6, 2.4, 3.4};
    const std::array<double, 3> shifts = {0.0, 0.35, -0.35};

    auto clamp_unit = [&](double x) {
        return std::clamp(x, margin, 1.0 - 2.0 * margin);
    };

    Candidate best;
    SimplexOptions nm;
    nm.max_iterations = opts.max_iterations;
    nm.x_tol = opts.x_tol;
    nm.f_tol = opts.f_tol;
    nm.restarts = opts.restarts;

    for (int k = 0; k < opts.starts; ++k) {
        const bool tied = (k % 2 == 0);
        const double w = widths[(k / 2) % widths.size()] * scale;
        const double center = clamp_unit(ps + shifts[(k / 2) / widths.size() % shifts.size()] * scale);

        std::vector<double> x0, step;
        if (tied) {
            double a0 = clamp_unit(center - w);
            double m0 = std::max(clamp_unit(center), a0 + 10.0 * obj.gap);
            x0 = {a0, m0};
            step = {0.35 * w, 0.2 * w};
        } else {
            double a0 = clamp_unit(center - w);
            double al0 = std::max(clamp_unit(center - 0.25 * w), a0 + 10.0 * obj.gap);
            double be0 = std::max(clamp_unit(center + 0.25 * w), al0);
            x0 = {a0, al0, be0};
            step = {0.35 * w, 0.2 * w, 0.2 * w};
        }

        auto fn = [&](std::span<const double> x) { return obj(x, tied); };
        const SimplexResult r = nelder_mead(fn, x0, step, nm);

        const double a = r.x[0];
        const double al = r.x[1];
        const double be = tied ? r.x[1] : r.x[2];
        if (r.f >= 1e3) continue;  // start ended in the penalty region
        const double b = obj.solve_b(a, al, be);
        if (!std::isfinite(b)) continue;
        Candidate c;
        c.value = -r.f;
        c.policy = {a, al, be, b};
        c.feasible = true;
        if (!best.feasible || better(c, best)) best = c;
    }

    RelaxedSolution out;
    out.h = h;
    if (!best.feasible) {
        out.converged = false;
        out.residual_frequency = std::numeric_limits<double>::infinity();
        return out;
    }

    out.policy = best.policy;
    out.policy.validate();
    out.summary = policy_growth_rate(out.policy, mp, gamma);
    out.growth_rate = out.summary.growth_rate;
    out.residual_frequency = std::abs(out.summary.expected_cycle_time - h);
    out.converged = out.residual_frequency <= opts.frequency_rel_tol * h;
    if (gamma.gamma == 0.0 && is_symmetric_case(mp)) {
        const double b = out.policy.b;
        const double lambda =
            mp.sigma * mp.sigma * (b - 0.5) / (2.0 * std::log(b / (1.0 - b)));
        out.lambda_diag = lambda;
        out.c_diag = (out.growth_rate - lambda) * h;
    }
    return out;
}

VerificationReport verify_explicit(const MarketParams& mp, double h, int grid_size) {
    mp.require_interior_ratio();
    if (!is_symmetric_case(mp))
        throw std::invalid_argument("verify_explicit: requires Merton ratio 1/2");
    if (!(h > 0.0)) throw std::invalid_argument("verify_explicit: h must be > 0");
    if (grid_size < 3) throw std::invalid_argument("verify_explicit: grid_size must be >= 3");

    const RelaxedSolution sym = symmetric_solution(mp, h);
    const double a = sym.policy.a;
    const double b = sym.policy.b;
    const double s2 = mp.sigma * mp.sigma;
    const double lambda = *sym.lambda_diag;
    const double coef = 2.0 * lambda / s2;

    // v' as printed for the explicit case; v'' by direct differentiation
    auto vprime = [&](double y) {
        const double w = 1.0 / (y * (1.0 - y));
        return w * (coef * std::log(y / (1.0 - y)) + 0.5 - y);
    };
    auto vsecond = [&](double y) {
        const double w = 1.0 / (y * (1.0 - y));
        const double u = std::log(y / (1.0 - y));
        const double wp = (2.0 * y - 1.0) * w * w;
        return coef * (w * w + u * wp) - w + (0.5 - y) * wp;
    };

    VerificationReport rep;

    // (v) generator equation on (a,b)
    for (int i = 1; i <= grid_size; ++i) {
        const double pi = a + (b - a) * i / (grid_size + 1);
        const double drift = pi * (1.0 - pi) * (mp.mu - s2 * pi);
        const double diff = mp.sigma * pi * (1.0 - pi);
        const double res = drift * vprime(pi) + 0.5 * diff * diff * vsecond(pi) +
                           g_flow(pi, mp) - lambda;
        rep.max_ode_residual = std::max(rep.max_ode_residual, std::abs(res));
    }

    // v recovered from v' anchored at v(pi*) = 0; constant extension outside
    // [a,b] keeps the intervention scan meaningful on all of (0,1)
    auto v_of = [&](double x) {
        const double xc = std::clamp(x, a, b);
        return adaptive_simpson(vprime, 0.5, xc, 1e-13);
    };
    const double va = v_of(a);
    const double vb = v_of(b);
    const double c = -vb;  // v(pi*) - v(b)

    // (vi) smooth fit at both restart points (alpha = beta = 1/2)
    const CostRate zero{0.0};
    rep.smooth_fit_residual_lower = std::abs(0.0 - va + trade_cost(a, 0.5, zero) - c);
    rep.smooth_fit_residual_upper = std::abs(0.0 - vb + trade_cost(b, 0.5, zero) - c);

    // (ii) intervention inequality sampled over a grid of pairs
    const double lo = 1e-4, hi = 1.0 - 1e-4;
    std::vector<double> xs(grid_size), vs(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        xs[i] = lo + (hi - lo) * i / (grid_size - 1);
        vs[i] = v_of(xs[i]);
    }
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i)
        for (int j = 0; j < grid_size; ++j) {
            const double slack = c - (vs[j] - vs[i] + trade_cost(xs[i], xs[j], zero));
            margin = std::min(margin, slack);
        }
    rep.intervention_inequality_margin = margin;

    // (vii) frequency equality through the renewal cycle time
    rep.frequency_residual = std::abs(expected_cycle_time(sym.policy, mp) - h);
    return rep;
}

double efficiency(double v, double v_ref) {
    if (!(v_ref > 0.0))
        throw std::invalid_argument("efficiency: reference rate must be > 0");
    return v / v_ref;
}

}  // namespace growthopt
