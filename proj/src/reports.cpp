// SPDX-License-Identifier: Apache-2.0

#include "growthopt/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "growthopt/baselines.hpp"

namespace growthopt {

namespace {

std::string fmt10(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace

std::vector<double> log_spaced_grid(double h_min, double h_max, int n) {
    if (!(h_min > 0.0) || !(h_max >= h_min))
        throw std::invalid_argument("log_spaced_grid: need 0 < h_min <= h_max");
    if (n < 1) throw std::invalid_argument("log_spaced_grid: need at least one point");
    if (n == 1) {
        if (h_min != h_max)
            throw std::invalid_argument("log_spaced_grid: single point needs h_min == h_max");
        return {h_min};
    }
    std::vector<double> grid(n);
    const double llo = std::log(h_min), lhi = std::log(h_max);
    for (int i = 0; i < n; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    grid.front() = h_min;
    grid.back() = h_max;
    return grid;
}

std::vector<EfficiencyRow> efficiency_curve(const MarketParams& mp,
                                            const std::vector<double>& h_grid,
                                            const SolverOptions& opts) {
    if (h_grid.empty()) throw std::invalid_argument("efficiency_curve: empty grid");
    const double vm = merton_growth(mp);
    std::vector<EfficiencyRow> rows;
    rows.reserve(h_grid.size());
    for (double h : h_grid) {
        EfficiencyRow row;
        row.h = h;
        row.v_o = solve_relaxed(mp, CostRate{0.0}, h, opts).growth_rate;
        row.v_h = h_investor_growth(mp, h).growth_rate;
        row.v_lambda = lambda_investor_growth(mp, 1.0 / h).growth_rate;
        row.e_o = efficiency(row.v_o, vm);
        row.e_h = efficiency(row.v_h, vm);
        row.e_lambda = efficiency(row.v_lambda, vm);
        rows.push_back(row);
    }
    return rows;
}

std::vector<CostEfficiencyRow> cost_efficiency_curve(const MarketParams& mp, CostRate gamma,
                                                     const std::vector<double>& h_grid,
                                                     const SolverOptions& opts) {
    if (h_grid.empty()) throw std::invalid_argument("cost_efficiency_curve: empty grid");
    const double vmc = merton_with_costs(mp, gamma).growth_rate;
    std::vector<CostEfficiencyRow> rows;
    rows.reserve(h_grid.size());
    for (double h : h_grid) {
        const RelaxedSolution sol = solve_relaxed(mp, gamma, h, opts);
        CostEfficiencyRow row;
        row.h = h;
        row.v_o = sol.growth_rate;
        row.e_o_c = efficiency(sol.growth_rate, vmc);
        row.a = sol.policy.a;
        row.alpha = sol.policy.alpha;
        row.beta = sol.policy.beta;
        row.b = sol.policy.b;
        rows.push_back(row);
    }
    return rows;
}

std::string to_csv(const std::vector<EfficiencyRow>& rows) {
    std::string out = "h,V_o,V_h,V_lambda,E_o,E_h,E_lambda\n";
    for (const auto& r : rows) {
        out += fmt10(r.h) + ',' + fmt10(r.v_o) + ',' + fmt10(r.v_h) + ',' +
               fmt10(r.v_lambda) + ',' + fmt10(r.e_o) + ',' + fmt10(r.e_h) + ',' +
               fmt10(r.e_lambda) + '\n';
    }
    return out;
}

std::string to_csv(const std::vector<CostEfficiencyRow>& rows) {
    std::string out = "h,V_o,E_o_c,a,alpha,beta,b\n";
    for (const auto& r : rows) {
        out += fmt10(r.h) + ',' + fmt10(r.v_o) + ',' + fmt10(r.e_o_c) + ',' + fmt10(r.a) +
               ',' + fmt10(r.alpha) + ',' + fmt10(r.beta) + ',' + fmt10(r.b) + '\n';
    }
    return out;
}

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<double>& x,
                          const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    if (x.empty() || series.empty())
        throw std::invalid_argument("svg_line_plot: nothing to plot");
    for (const auto& s : series)
        if (s.second.size() != x.size())
            throw std::invalid_argument("svg_line_plot: series length mismatch");

    constexpr int kW = 720, kH = 480;
    constexpr int kL = 70, kR = 20, kT = 40, kB = 50;
    double xmin = x[0], xmax = x[0];
    for (double v : x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& s : series)
        for (double v : s.second) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double v) { return kL + (v - xmin) / (xmax - xmin) * (kW - kL - kR); };
    auto py = [&](double v) { return kH - kB - (v - ymin) / (ymax - ymin) * (kH - kT - kB); };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf"};

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kW) +
           "\" height=\"" + std::to_string(kH) + "\" viewBox=\"0 0 " + std::to_string(kW) +
           " " + std::to_string(kH) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
    // axes
    svg += "<line x1=\"" + fmt6(px(xmin)) + "\" y1=\"" + fmt6(py(ymin)) + "\" x2=\"" +
           fmt6(px(xmax)) + "\" y2=\"" + fmt6(py(ymin)) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt6(px(xmin)) + "\" y1=\"" + fmt6(py(ymin)) + "\" x2=\"" +
           fmt6(px(xmin)) + "\" y2=\"" + fmt6(py(ymax)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt6(px(xmin)) + "\" y=\"" + std::to_string(kH - 14) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + fmt6(xmin) + "</text>\n";
    svg += "<text x=\"" + fmt6(px(xmax) - 30) + "\" y=\"" + std::to_string(kH - 14) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + fmt6(xmax) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"" + std::to_string(kH - 14) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           x_label + "</text>\n";
    svg += "<text x=\"8\" y=\"" + fmt6(py(ymin)) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + fmt6(ymin) + "</text>\n";
    svg += "<text x=\"8\" y=\"" + fmt6(py(ymax) + 10) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + fmt6(ymax) + "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % std::size(kColors)];
        std::string pts;
        for (std::size_t i = 0; i < x.size(); ++i)
            pts += fmt6(px(x[i])) + ',' + fmt6(py(series[s].second[i])) + ' ';
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        svg += "<text x=\"" + std::to_string(kW - kR - 120) + "\" y=\"" +
               std::to_string(kT + 18 * (s + 1)) +
               "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" + color + "\">" +
               series[s].first + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace growthopt
