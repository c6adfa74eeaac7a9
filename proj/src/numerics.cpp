// SPDX-License-Identifier: Apache-2.0

#include "growthopt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace growthopt {

RootResult brent_root(const std::function<double(double)>& f, double lo, double hi,
                      double x_tol, double f_tol, int max_iter) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    RootResult out;
    if (fa == 0.0) { out = {a, 0.0, true, 0}; return out; }
    if (fb == 0.0) { out = {b, 0.0, true, 0}; return out; }
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent_root: no sign change in bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = b - a; e = d; }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * x_tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= f_tol) {
            out = {b, fb, true, iter};
            return out;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        if (std::abs(d) > tol1) b += d;
        else b += (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    out = {b, fb, false, max_iter};
    return out;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;
    double a = lo, b = hi;
    double h = b - a;
    if (h <= x_tol) return 0.5 * (a + b);
    double c = a + invphi2 * h;
    double d = a + invphi * h;
    double fc = f(c), fd = f(d);
    const int n = static_cast<int>(std::ceil(std::log(x_tol / h) / std::log(invphi)));
    for (int k = 0; k < n; ++k) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            h *= invphi;
            c = a + invphi2 * h;
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            h *= invphi;
            d = a + invphi * h;
            fd = f(d);
        }
    }
    return fc > fd ? 0.5 * (a + d) : 0.5 * (c + b);
}

double grid_then_golden_max(const std::function<double(double)>& f, double lo, double hi,
                            int grid_points, double x_tol) {
    if (grid_points < 3) grid_points = 3;
    int best = 0;
    double fbest = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + (hi - lo) * i / (grid_points - 1);
        const double fx = f(x);
        if (fx > fbest) { fbest = fx; best = i; }
    }
    const double cell = (hi - lo) / (grid_points - 1);
    const double a = std::max(lo, lo + (best - 1) * cell);
    const double b = std::min(hi, lo + (best + 1) * cell);
    return golden_section_max(f, a, b, x_tol);
}

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
    double d = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts[0].size(); ++j)
            d = std::max(d, std::abs(pts[i][j] - pts[0][j]));
    return d;
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> x0, std::span<const double> step,
                          const SimplexOptions& opts) {
    const std::size_t n = x0.size();
    SimplexResult result;
    result.x.assign(x0.begin(), x0.end());
    result.f = f(result.x);
    result.evaluations = 1;

    std::vector<double> scale(step.begin(), step.end());

    for (int round = 0; round <= opts.restarts; ++round) {
        std::vector<std::vector<double>> pts(n + 1, result.x);
        std::vector<double> fv(n + 1);
        for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += scale[i];
        for (std::size_t i = 0; i <= n; ++i) { fv[i] = f(pts[i]); ++result.evaluations; }

        std::vector<std::size_t> order(n + 1);
        for (int iter = 0; iter < opts.max_iterations; ++iter) {
            for (std::size_t i = 0; i <= n; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            {
                std::vector<std::vector<double>> p2(n + 1);
                std::vector<double> f2(n + 1);
                for (std::size_t i = 0; i <= n; ++i) { p2[i] = pts[order[i]]; f2[i] = fv[order[i]]; }
                pts.swap(p2); fv.swap(f2);
            }
            if (fv[n] - fv[0] <= opts.f_tol || simplex_diameter(pts) <= opts.x_tol) {
                result.converged = true;
                break;
            }

            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;

            auto blend = [&](double t) {
                std::vector<double> x(n);
                for (std::size_t j = 0; j < n; ++j)
                    x[j] = centroid[j] + t * (pts[n][j] - centroid[j]);
                return x;
            };

            std::vector<double> xr = blend(-1.0);
            double fr = f(xr); ++result.evaluations;
            if (fr < fv[0]) {
                std::vector<double> xe = blend(-2.0);
                double fe = f(xe); ++result.evaluations;
                if (fe < fr) { pts[n] = std::move(xe); fv[n] = fe; }
                else { pts[n] = std::move(xr); fv[n] = fr; }
            } else if (fr < fv[n - 1]) {
                pts[n] = std::move(xr); fv[n] = fr;
            } else {
                const bool outside = fr < fv[n];
                std::vector<double> xc = blend(outside ? -0.5 : 0.5);
                double fc = f(xc); ++result.evaluations;
                if (fc < std::min(fr, fv[n])) {
                    pts[n] = std::move(xc); fv[n] = fc;
                } else {
                    for (std::size_t i = 1; i <= n; ++i) {
                        for (std::size_t j = 0; j < n; ++j)
                            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                        fv[i] = f(pts[i]); ++result.evaluations;
                    }
                }
            }
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i <= n; ++i)
            if (fv[i] < fv[best]) best = i;
        if (fv[best] < result.f) { result.f = fv[best]; result.x = pts[best]; }
        for (auto& s : scale) s *= 0.1;  // re-inflate tighter around the incumbent
    }
    return result;
}

namespace {

double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                       double fa, double fm, double fb, double whole, double tol,
                       int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        // initial guesses for the roots, largest first (Numerical Recipes style)
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(n, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

double GaussHermiteRule::expect(const std::function<double(double)>& g, double mean,
                                double stddev) const {
    const double scale = std::numbers::sqrt2 * stddev;
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        acc += weights[i] * g(mean + scale * nodes[i]);
    return acc / std::sqrt(std::numbers::pi);
}

}  // namespace growthopt
