// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <cstring>

#include "growthopt/optimizer.hpp"
#include "growthopt/rng.hpp"
#include "growthopt/simulate.hpp"

using namespace growthopt;

namespace {
const MarketParams kHalf{0.08, 0.40};
const double kB1 = 0.598687660112452000;
const double kA1 = 1.0 - kB1;
const BoundaryPolicy kSymPolicy{kA1, 0.5, 0.5, kB1};

bool bitwise_equal(const SimResult& x, const SimResult& y) {
    return std::memcmp(&x, &y, sizeof(SimResult)) == 0;
}
}  // namespace

TEST_CASE("counter rng streams are reproducible and distinct") {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
    bool any_diff = false;
    CounterRng a2(42, 7);
    for (int i = 0; i < 100; ++i) any_diff |= (a2.uniform() != c.uniform());
    CHECK(any_diff);
}

TEST_CASE("counter rng normals have sane moments") {
    CounterRng rng(1234, 0);
    const int n = 200000;
    double s = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        s += x; s2 += x * x; s3 += x * x * x; s4 += x * x * x * x;
    }
    CHECK(std::abs(s / n) < 4.0 / std::sqrt(double(n)));
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(s3 / n) < 0.05);
    CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("step_fraction frozen transform values") {
    CHECK(step_fraction(0.5, 1.0, 1.0, kHalf) ==
          doctest::Approx(0.598687660112452).epsilon(1e-13));
    // zero draw and mu = sigma^2/2: log-odds drift vanishes
    CHECK(step_fraction(0.37, 0.5, 0.0, kHalf) == doctest::Approx(0.37).epsilon(1e-14));
}

TEST_CASE("step_fraction stays inside the unit interval") {
    for (double draw : {-100.0, -10.0, 0.0, 10.0, 100.0}) {
        const double p = step_fraction(0.5, 1.0, draw, kHalf);
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
    CHECK_THROWS_AS(step_fraction(0.0, 1.0, 0.0, kHalf), std::invalid_argument);
    CHECK_THROWS_AS(step_fraction(0.5, 0.0, 0.0, kHalf), std::invalid_argument);
}

TEST_CASE("exact log-odds stepping matches an Euler oracle in distribution") {
    // one small step from pi0 = 0.5; independent streams, dt = 1e-4
    const double dt = 1e-4, pi0 = 0.5;
    const int n = 1000000;
    double m_ex = 0.0, v_ex = 0.0, m_eu = 0.0, v_eu = 0.0;

    CounterRng rng_ex(555, 0);
    for (int i = 0; i < n; ++i) {
        const double p = step_fraction(pi0, dt, rng_ex.normal(), kHalf);
        m_ex += p;
        v_ex += p * p;
    }
    CounterRng rng_eu(555, 1);
    for (int i = 0; i < n; ++i) {
        const double xi = rng_eu.normal();
        const double drift = pi0 * (1.0 - pi0) * (kHalf.mu - kHalf.sigma * kHalf.sigma * pi0);
        const double vol = pi0 * (1.0 - pi0) * kHalf.sigma;
        const double p = pi0 + drift * dt + vol * std::sqrt(dt) * xi;
        m_eu += p;
        v_eu += p * p;
    }
    m_ex /= n; m_eu /= n;
    v_ex = v_ex / n - m_ex * m_ex;
    v_eu = v_eu / n - m_eu * m_eu;

    const double se_mean = std::sqrt((v_ex + v_eu) / n);
    CHECK(std::abs(m_ex - m_eu) <= 4.0 * se_mean);
    const double se_var = std::sqrt(2.0 / n) * (v_ex + v_eu);  // ~ 2 var^2/n each
    CHECK(std::abs(v_ex - v_eu) <= 4.0 * se_var);
}

TEST_CASE("simulate_exit starting on the boundary exits immediately") {
    SimConfig cfg;
    cfg.paths = 50;
    cfg.horizon = 10.0;
    const SimResult at_a = simulate_exit(kA1, kA1, kB1, kHalf, cfg);
    CHECK(at_a.exit_time_mean == 0.0);
    CHECK(at_a.exit_time_se == 0.0);
    CHECK(at_a.upper_exit_fraction == 0.0);
    const SimResult at_b = simulate_exit(kB1, kA1, kB1, kHalf, cfg);
    CHECK(at_b.upper_exit_fraction == 1.0);
}

TEST_CASE("simulate_exit matches the analytic exit law in the symmetric case") {
    SimConfig cfg;
    cfg.paths = 20000;
    cfg.dt = 1e-3;
    cfg.horizon = 50.0;
    cfg.seed = 99;
    const SimResult r = simulate_exit(0.5, kA1, kB1, kHalf, cfg);
    CHECK_FALSE(r.flagged);
    CHECK(std::abs(r.exit_time_mean - 1.0) <= 3.0 * r.exit_time_se + 2e-3);
    CHECK(std::abs(r.upper_exit_fraction - 0.5) <= 3.0 * r.upper_exit_fraction_se);
    CHECK(r.paths_used == 20000);
}

TEST_CASE("bridge correction reduces the exit-time discretization bias") {
    for (double dt : {1e-2, 1e-3}) {
        SimConfig on, off;
        on.paths = off.paths = 40000;
        on.dt = off.dt = dt;
        on.horizon = off.horizon = 50.0;
        on.seed = off.seed = 4242;          // common random numbers
        on.bridge_correction = true;
        off.bridge_correction = false;
        const double bias_on =
            std::abs(simulate_exit(0.5, kA1, kB1, kHalf, on).exit_time_mean - 1.0);
        const double bias_off =
            std::abs(simulate_exit(0.5, kA1, kB1, kHalf, off).exit_time_mean - 1.0);
        CHECK(bias_on < bias_off);
    }
}

TEST_CASE("simulate_policy agrees with the renewal values (small run)") {
    SimConfig cfg;
    cfg.paths = 400;
    cfg.horizon = 100.0;
    cfg.dt = 1e-3;
    cfg.seed = 31337;
    const SimResult r = simulate_policy(kSymPolicy, kHalf, CostRate{0.0}, cfg);
    const RenewalSummary ana = policy_growth_rate(kSymPolicy, kHalf, CostRate{0.0});
    CHECK(std::abs(r.growth_rate_mean - ana.growth_rate) <= 3.0 * r.growth_rate_se);
    CHECK(std::abs(r.trade_frequency_mean - ana.trade_frequency) <=
          3.0 * r.trade_frequency_se + 1e-3);
    CHECK(std::abs(r.exit_time_mean - ana.expected_cycle_time) <=
          3.0 * r.exit_time_se + 2e-3);
    CHECK(r.paths_used == 400);
    CHECK_FALSE(r.flagged);
}

TEST_CASE("costs lower the simulated growth rate (common draws)") {
    SimConfig cfg;
    cfg.paths = 100;
    cfg.horizon = 50.0;
    cfg.seed = 7;
    const SimResult free = simulate_policy(kSymPolicy, kHalf, CostRate{0.0}, cfg);
    const SimResult costly = simulate_policy(kSymPolicy, kHalf, CostRate{0.003}, cfg);
    CHECK(costly.growth_rate_mean < free.growth_rate_mean);
    // identical paths, so the frequency statistics match exactly
    CHECK(costly.trade_frequency_mean == free.trade_frequency_mean);
}

TEST_CASE("seeded simulation is deterministic, independent of worker count") {
    SimConfig cfg;
    cfg.paths = 64;
    cfg.horizon = 20.0;
    cfg.seed = 2024;
    cfg.threads = 1;
    const SimResult base = simulate_policy(kSymPolicy, kHalf, CostRate{0.003}, cfg);
    const SimResult again = simulate_policy(kSymPolicy, kHalf, CostRate{0.003}, cfg);
    CHECK(bitwise_equal(base, again));
    cfg.threads = 3;
    const SimResult threaded = simulate_policy(kSymPolicy, kHalf, CostRate{0.003}, cfg);
    CHECK(bitwise_equal(base, threaded));

    SimConfig other = cfg;
    other.seed = 2025;
    const SimResult different = simulate_policy(kSymPolicy, kHalf, CostRate{0.003}, other);
    CHECK_FALSE(bitwise_equal(base, different));
}

TEST_CASE("Prop-3.1 accumulation matches explicit share/bond bookkeeping") {
    SimConfig cfg;
    cfg.paths = 100;
    cfg.horizon = 10.0;
    cfg.dt = 1e-3;
    cfg.seed = 11;
    cfg.accounting_cross_check = true;
    const SimResult r = simulate_policy(kSymPolicy, kHalf, CostRate{0.003}, cfg);
    CHECK(r.accounting_gap_max > 0.0);   // the two accumulations are genuinely distinct
    CHECK(r.accounting_gap_max < 2e-3);  // but agree to discretization accuracy
}

TEST_CASE("simulate config validation") {
    SimConfig bad;
    bad.paths = 0;
    CHECK_THROWS_AS(simulate_policy(kSymPolicy, kHalf, CostRate{0.0}, bad),
                    std::invalid_argument);
    SimConfig bad2;
    bad2.dt = 0.0;
    CHECK_THROWS_AS(simulate_exit(0.5, kA1, kB1, kHalf, bad2), std::invalid_argument);
    SimConfig ok;
    CHECK_THROWS_AS(simulate_exit(0.2, kA1, kB1, kHalf, ok), std::invalid_argument);
}
