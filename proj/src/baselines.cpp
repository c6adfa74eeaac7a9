// SPDX-License-Identifier: Apache-2.0

#include "growthopt/baselines.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "growthopt/numerics.hpp"

namespace growthopt {

namespace {

constexpr int kHermiteNodes = 96;

const GaussHermiteRule& hermite_rule() {
    static const GaussHermiteRule rule = gauss_hermite(kHermiteNodes);
    return rule;
}

// Maximize over a in [0,1]; both endpoints are checked exactly so a
// boundary optimum (a* = 0, A = 0) is returned without rounding noise.
PeriodValue maximize_fraction(const std::function<double(double)>& value) {
    const double a_star = grid_then_golden_max(value, 0.0, 1.0, 513, 1e-10);
    PeriodValue best{value(a_star), a_star};
    for (double a : {0.0, 1.0}) {
        const double v = value(a);
        if (v > best.value || (v == best.value && a < best.fraction)) best = {v, a};
    }
    return best;
}

}  // namespace

double period_return_moment(int k, const MarketParams& mp, double h) {
    mp.validate();
    if (k < 0) throw std::invalid_argument("period_return_moment: k must be >= 0");
    if (!(h > 0.0)) throw std::invalid_argument("period_return_moment: h must be > 0");
    const double s2 = mp.sigma * mp.sigma;
    return std::exp(k * (mp.mu - 0.5 * s2) * h + 0.5 * k * k * s2 * h);
}

PeriodValue a_of_h(const MarketParams& mp, double h) {
    mp.validate();
    if (!(h > 0.0)) throw std::invalid_argument("a_of_h: h must be > 0");

    const GaussHermiteRule& rule = hermite_rule();
    const double mean = (mp.mu - 0.5 * mp.sigma * mp.sigma) * h;
    const double sd = mp.sigma * std::sqrt(h);

    // precompute Z - 1 at the quadrature nodes
    std::vector<double> zm1(rule.nodes.size());
    const double scale = std::sqrt(2.0) * sd;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        zm1[i] = std::expm1(mean + scale * rule.nodes[i]);
    const double wnorm = std::numbers::inv_sqrtpi;

    auto value = [&](double a) {
        double acc = 0.0;
        for (std::size_t i = 0; i < zm1.size(); ++i)
            acc += rule.weights[i] * std::log1p(a * zm1[i]);
        return acc * wnorm;
    };
    return maximize_fraction(value);
}

PeriodValue a_of_h_taylor(const MarketParams& mp, double h, int order) {
    mp.validate();
    if (!(h > 0.0)) throw std::invalid_argument("a_of_h_taylor: h must be > 0");
    if (order < 2)
        throw std::invalid_argument("a_of_h_taylor: order must be >= 2 "
                                    "(the linear truncation has no interior maximum)");

    // m_k = E[(Z-1)^k] via the binomial expansion over lognormal moments
    std::vector<double> m(order + 1, 0.0);
    std::vector<double> zmom(order + 1);
    for (int j = 0; j <= order; ++j) zmom[j] = period_return_moment(j, mp, h);
    std::vector<double> binom(order + 1, 0.0);
    for (int k = 1; k <= order; ++k) {
        binom[0] = 1.0;
        for (int j = k; j >= 1; --j) binom[j] = binom[j] + binom[j - 1];
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom[j] * zmom[j];
        }
        m[k] = acc;
    }

    auto value = [&](double a) {
        double acc = 0.0;
        double apow = 1.0;
        for (int k = 1; k <= order; ++k) {
            apow *= a;
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            acc += sign * apow * m[k] / k;
        }
        return acc;
    };
    return maximize_fraction(value);
}

BaselineResult h_investor_growth(const MarketParams& mp, double h) {
    const PeriodValue pv = a_of_h(mp, h);
    return {h, pv.value / h, pv.fraction, BaselineMethod::quadrature};
}

BaselineResult lambda_investor_growth(const MarketParams& mp, double lambda) {
    mp.validate();
    if (!(lambda > 0.0))
        throw std::invalid_argument("lambda_investor_growth: lambda must be > 0");
    const double correction =
        0.5 * mp.mu * mp.mu * (1.0 - mp.merton_ratio()) * (1.0 - mp.merton_ratio());
    return {lambda, merton_growth(mp) - correction / lambda, 0.0, BaselineMethod::formula};
}

}  // namespace growthopt
