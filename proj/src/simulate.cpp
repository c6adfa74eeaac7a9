// SPDX-License-Identifier: Apache-2.0

#include "growthopt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "growthopt/rng.hpp"

namespace growthopt {

double CounterRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

namespace {

double logit(double x) { return std::log(x / (1.0 - x)); }

double logistic(double y) {
    const double p = 1.0 / (1.0 + std::exp(-y));
    return std::clamp(p, 1e-300, 1.0 - 1e-16);
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe out;
    const std::size_t n = xs.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / n;
    if (n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.se = std::sqrt(ss / (n - 1) / n);
    }
    return out;
}

// Run fn(path_index) for every path, split across threads in contiguous
// blocks; results land in per-path slots so the reduction order is fixed.
template <typename Fn>
void for_each_path(std::size_t paths, int threads, Fn&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    std::size_t nthreads = threads > 0 ? static_cast<std::size_t>(threads) : hw;
    nthreads = std::clamp<std::size_t>(nthreads, 1, std::max<std::size_t>(paths, 1));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < paths; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = (paths + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(paths, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

enum class Crossing { none, upper, lower };

// Crossing check for one grid step of the log-odds walk: observed exit at
// the endpoint, otherwise an optional Brownian-bridge draw for a crossing
// between grid points. time_frac is the fraction of dt at which the exit is
// booked (1 when observed at the endpoint, 1/2 for a bridge detection).
struct StepExit {
    Crossing side = Crossing::none;
    double time_frac = 1.0;
};

inline StepExit check_crossing(double y0, double y1, double ya, double yb,
                               double sigma2_dt, bool bridge, CounterRng& rng) {
    if (y1 >= yb) return {Crossing::upper, 1.0};
    if (y1 <= ya) return {Crossing::lower, 1.0};
    if (bridge) {
        const double pu = std::exp(-2.0 * (yb - y0) * (yb - y1) / sigma2_dt);
        const double pd = std::exp(-2.0 * (y0 - ya) * (y1 - ya) / sigma2_dt);
        const double u = rng.uniform();
        if (u < pu) return {Crossing::upper, 0.5};
        if (u < pu + pd) return {Crossing::lower, 0.5};
    }
    return {Crossing::none, 1.0};
}

}  // namespace

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("SimConfig: horizon must be > 0");
    if (paths < 1) throw std::invalid_argument("SimConfig: paths must be >= 1");
    if (threads < 0) throw std::invalid_argument("SimConfig: threads must be >= 0");
}

double step_fraction(double pi, double dt, double normal_draw, const MarketParams& mp) {
    mp.validate();
    if (!(pi > 0.0 && pi < 1.0))
        throw std::invalid_argument("step_fraction: pi must lie in (0,1)");
    if (!(dt > 0.0)) throw std::invalid_argument("step_fraction: dt must be > 0");
    const double drift = (mp.mu - 0.5 * mp.sigma * mp.sigma) * dt;
    return logistic(logit(pi) + drift + mp.sigma * std::sqrt(dt) * normal_draw);
}

SimResult simulate_exit(double pi0, double a, double b, const MarketParams& mp,
                        const SimConfig& cfg) {
    mp.validate();
    cfg.validate();
    if (!(0.0 < a && a < b && b < 1.0))
        throw std::invalid_argument("simulate_exit: need 0 < a < b < 1");
    if (!(pi0 >= a && pi0 <= b))
        throw std::invalid_argument("simulate_exit: pi0 outside [a,b]");

    struct PathOut {
        double exit_time = 0.0;
        double upper = 0.0;
        bool exhausted = false;
    };
    std::vector<PathOut> res(cfg.paths);

    // instantaneous exit when started on a boundary
    if (pi0 == a || pi0 == b) {
        for (auto& r : res) r.upper = (pi0 == b) ? 1.0 : 0.0;
    } else {
        const double ya = logit(a), yb = logit(b), y0 = logit(pi0);
        const double drift = (mp.mu - 0.5 * mp.sigma * mp.sigma) * cfg.dt;
        const double sq = mp.sigma * std::sqrt(cfg.dt);
        const double s2dt = mp.sigma * mp.sigma * cfg.dt;
        const auto nsteps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));

        for_each_path(cfg.paths, cfg.threads, [&](std::size_t i) {
            CounterRng rng(cfg.seed, i);
            double y = y0;
            PathOut out;
            out.exhausted = true;
            for (std::size_t k = 0; k < nsteps; ++k) {
                const double y1 = y + drift + sq * rng.normal();
                const StepExit ex =
                    check_crossing(y, y1, ya, yb, s2dt, cfg.bridge_correction, rng);
                if (ex.side != Crossing::none) {
                    out.exit_time = (k + ex.time_frac) * cfg.dt;
                    out.upper = (ex.side == Crossing::upper) ? 1.0 : 0.0;
                    out.exhausted = false;
                    break;
                }
                y = y1;
            }
            res[i] = out;
        });
    }

    std::vector<double> times, uppers;
    times.reserve(cfg.paths);
    uppers.reserve(cfg.paths);
    std::size_t exhausted = 0;
    for (const auto& r : res) {
        if (r.exhausted) {
            ++exhausted;
            continue;
        }
        times.push_back(r.exit_time);
        uppers.push_back(r.upper);
    }

    SimResult out;
    const MeanSe t = mean_se(times), u = mean_se(uppers);
    out.exit_time_mean = t.mean;
    out.exit_time_se = t.se;
    out.upper_exit_fraction = u.mean;
    out.upper_exit_fraction_se = u.se;
    out.paths_used = times.size();
    out.exhausted_fraction = static_cast<double>(exhausted) / cfg.paths;
    out.flagged = out.exhausted_fraction > 0.01;
    return out;
}

SimResult simulate_policy(const BoundaryPolicy& policy, const MarketParams& mp,
                          CostRate gamma, const SimConfig& cfg) {
    policy.validate();
    mp.require_interior_ratio();
    gamma.validate();
    cfg.validate();

    const double ya = logit(policy.a), yb = logit(policy.b);
    const double yalpha = logit(policy.alpha), ybeta = logit(policy.beta);
    const double g = gamma.gamma;
    const double drift = (mp.mu - 0.5 * mp.sigma * mp.sigma) * cfg.dt;
    const double sq = mp.sigma * std::sqrt(cfg.dt);
    const double s2dt = mp.sigma * mp.sigma * cfg.dt;
    const auto nsteps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
    const double horizon = nsteps * cfg.dt;

    struct PathOut {
        double growth = 0.0;
        double freq = 0.0;
        double cycle_mean = 0.0;
        bool has_cycles = false;
        double gap = 0.0;
    };
    std::vector<PathOut> res(cfg.paths);

    for_each_path(cfg.paths, cfg.threads, [&](std::size_t i) {
        CounterRng rng(cfg.seed, i);
        double y = yalpha;                    // renewal start at the lower restart point
        double lw = 0.0;                      // flow + martingale + trade-cost accumulation
        double lw_book = 0.0;                 // exact share/bond bookkeeping
        double pi_book = policy.alpha;
        std::size_t trades = 0;
        double cycle_time_sum = 0.0;
        double cycle_start = 0.0;

        for (std::size_t k = 0; k < nsteps; ++k) {
            const double xi = rng.normal();
            const double pi = logistic(y);
            lw += g_flow(pi, mp) * cfg.dt + pi * sq * xi;

            const double inc = drift + sq * xi;
            const double y1 = y + inc;
            if (cfg.accounting_cross_check) {
                // stock account grows by exp(inc); wealth picks up the mix
                lw_book += std::log1p(pi_book * std::expm1(inc));
                const double z = pi_book * std::exp(inc);
                pi_book = z / (z + 1.0 - pi_book);
            }

            const StepExit ex =
                check_crossing(y, y1, ya, yb, s2dt, cfg.bridge_correction, rng);
            if (ex.side == Crossing::none) {
                y = y1;
                continue;
            }
            const bool up = (ex.side == Crossing::upper);
            const double trigger = up ? policy.b : policy.a;
            const double restart = up ? policy.beta : policy.alpha;
            lw += trade_cost(trigger, restart, gamma);
            if (cfg.accounting_cross_check) {
                // trade at the realized (possibly overshot) fraction
                const double vol = restart < pi_book
                                       ? (pi_book - restart) / (1.0 - g * restart)
                                       : (restart - pi_book) / (1.0 + g * restart);
                lw_book += std::log1p(-g * std::abs(vol));
                pi_book = restart;
            }
            ++trades;
            const double t_exit = (k + ex.time_frac) * cfg.dt;
            cycle_time_sum += t_exit - cycle_start;
            cycle_start = t_exit;
            y = up ? ybeta : yalpha;
        }

        PathOut out;
        out.growth = lw / horizon;
        out.freq = static_cast<double>(trades) / horizon;
        if (trades > 0) {
            out.cycle_mean = cycle_time_sum / trades;
            out.has_cycles = true;
        }
        if (cfg.accounting_cross_check)
            out.gap = std::abs(lw - lw_book) / horizon;
        res[i] = out;
    });

    std::vector<double> growths, freqs, cycles;
    growths.reserve(cfg.paths);
    freqs.reserve(cfg.paths);
    std::size_t no_trade_paths = 0;
    double gap_max = 0.0;
    for (const auto& r : res) {
        growths.push_back(r.growth);
        freqs.push_back(r.freq);
        if (r.has_cycles) cycles.push_back(r.cycle_mean);
        else ++no_trade_paths;
        gap_max = std::max(gap_max, r.gap);
    }

    SimResult out;
    const MeanSe gr = mean_se(growths), fr = mean_se(freqs), cy = mean_se(cycles);
    out.growth_rate_mean = gr.mean;
    out.growth_rate_se = gr.se;
    out.trade_frequency_mean = fr.mean;
    out.trade_frequency_se = fr.se;
    out.exit_time_mean = cy.mean;
    out.exit_time_se = cy.se;
    out.paths_used = cfg.paths;
    out.exhausted_fraction = static_cast<double>(no_trade_paths) / cfg.paths;
    out.flagged = out.exhausted_fraction > 0.01;
    out.accounting_gap_max = gap_max;
    return out;
}

}  // namespace growthopt
