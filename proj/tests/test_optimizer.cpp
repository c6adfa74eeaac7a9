// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "growthopt/market.hpp"
#include "growthopt/optimizer.hpp"

using namespace growthopt;

namespace {
const MarketParams kHalf{0.08, 0.40};
const MarketParams kSixTenths{0.096, 0.40};
}  // namespace

TEST_CASE("symmetric_solution frozen values") {
    const RelaxedSolution s1 = symmetric_solution(kHalf, 1.0);
    CHECK(s1.policy.b == doctest::Approx(0.598687660112452).epsilon(1e-12));
    CHECK(s1.policy.a == doctest::Approx(0.401312339887548).epsilon(1e-12));
    CHECK(s1.policy.alpha == 0.5);
    CHECK(s1.policy.beta == 0.5);
    CHECK(s1.growth_rate == doctest::Approx(0.0198680718400073143).epsilon(1e-13));
    CHECK(s1.summary.trade_frequency == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s1.residual_frequency < 1e-12);
    CHECK(s1.converged);

    const RelaxedSolution s25 = symmetric_solution(kHalf, 0.25);
    CHECK(s25.policy.b == doctest::Approx(0.549833997312478).epsilon(1e-12));
    CHECK(s25.growth_rate == doctest::Approx(0.0199667552865861211).epsilon(1e-13));
}

TEST_CASE("symmetric_solution lambda and c diagnostics") {
    const RelaxedSolution s = symmetric_solution(kHalf, 1.0);
    REQUIRE(s.lambda_diag.has_value());
    REQUIRE(s.c_diag.has_value());
    CHECK(*s.lambda_diag == doctest::Approx(0.0197375320224904).epsilon(1e-12));
    // V = lambda + c/h
    CHECK(*s.lambda_diag + *s.c_diag / s.h ==
          doctest::Approx(s.growth_rate).epsilon(1e-14));
    CHECK(*s.c_diag > 0.0);
}

TEST_CASE("symmetric_solution small-h expansion") {
    // V(h) = sigma^2/8 - sigma^4 h/192 + O(h^2)
    const double vm = merton_growth(kHalf);
    const double c2 = std::pow(kHalf.sigma, 4) / 192.0;
    for (double h : {0.1, 0.01, 0.001}) {
        const double v = symmetric_solution(kHalf, h).growth_rate;
        CHECK(std::abs(vm - v - c2 * h) < 2.0 * h * h * 1e-2 * vm);
        CHECK((vm - v) / h == doctest::Approx(c2).epsilon(0.05));
    }
}

TEST_CASE("symmetric_solution preconditions") {
    CHECK_THROWS_AS(symmetric_solution(kSixTenths, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_solution(kHalf, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_solution(kHalf, -1.0), std::invalid_argument);
}

TEST_CASE("solve_relaxed reproduces the closed form across h") {
    for (double h : {0.1, 0.25, 0.5, 1.0, 2.0}) {
        const RelaxedSolution got = solve_relaxed(kHalf, CostRate{0.0}, h);
        const RelaxedSolution want = symmetric_solution(kHalf, h);
        REQUIRE(got.converged);
        CHECK(std::abs(got.growth_rate - want.growth_rate) < 1e-6);
        CHECK(std::abs(got.policy.a - want.policy.a) < 1e-4);
        CHECK(std::abs(got.policy.b - want.policy.b) < 1e-4);
        CHECK(std::abs(got.policy.alpha - 0.5) < 1e-4);
        CHECK(std::abs(got.policy.beta - 0.5) < 1e-4);
        CHECK(got.residual_frequency <= 1e-8 * h);
    }
}

TEST_CASE("solve_relaxed matches the with-costs anchor at h = 0.2") {
    const RelaxedSolution sol = solve_relaxed(kSixTenths, CostRate{0.003}, 0.2);
    REQUIRE(sol.converged);
    CHECK(sol.growth_rate == doctest::Approx(0.0284782).epsilon(2e-4));
    CHECK(std::abs(sol.growth_rate - 0.0284782) < 5e-6);
    const double vmc = merton_with_costs(kSixTenths, CostRate{0.003}).growth_rate;
    CHECK(efficiency(sol.growth_rate, vmc) > 0.99995);
    CHECK(sol.growth_rate < vmc);
    // the with-costs optimum keeps the restart points strictly apart
    CHECK(sol.policy.alpha < sol.policy.beta);
}

TEST_CASE("solve_relaxed approaches the cost-Merton rate as h shrinks") {
    const double vmc = merton_with_costs(kSixTenths, CostRate{0.003}).growth_rate;
    double prev = 0.0;
    for (double h : {0.2, 0.1, 0.05}) {
        const double v = solve_relaxed(kSixTenths, CostRate{0.003}, h).growth_rate;
        CHECK(v > prev);
        CHECK(v < vmc);
        prev = v;
    }
    CHECK(vmc - prev < 2e-6);
}

TEST_CASE("solve_relaxed growth is nonincreasing in h") {
    double prev = 1e300;
    for (double h : {0.05, 0.1, 0.2, 0.5, 1.0}) {
        const double v = solve_relaxed(kHalf, CostRate{0.0}, h).growth_rate;
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
}

TEST_CASE("solve_relaxed sandwich bounds") {
    for (double gamma : {0.0, 0.003}) {
        for (double h : {0.1, 0.5}) {
            const RelaxedSolution sol = solve_relaxed(kSixTenths, CostRate{gamma}, h);
            REQUIRE(sol.converged);
            CHECK(sol.growth_rate >= 0.0);
            CHECK(sol.growth_rate <= merton_growth(kSixTenths) + 1e-12);
            CHECK(sol.growth_rate <=
                  merton_with_costs(kSixTenths, CostRate{gamma}).growth_rate + 1e-12);
        }
    }
}

TEST_CASE("solve_relaxed feasibility and summary consistency") {
    const RelaxedSolution sol = solve_relaxed(kSixTenths, CostRate{0.001}, 0.3);
    REQUIRE(sol.converged);
    CHECK(sol.residual_frequency / 0.3 <= 1e-8);
    CHECK(sol.growth_rate == sol.summary.growth_rate);
    CHECK(sol.summary.trade_frequency ==
          doctest::Approx(1.0 / sol.summary.expected_cycle_time).epsilon(1e-14));
    sol.policy.validate();
}

TEST_CASE("solve_relaxed flags an unreachable budget") {
    const RelaxedSolution sol = solve_relaxed(kSixTenths, CostRate{0.003}, 1e9);
    CHECK_FALSE(sol.converged);
}

TEST_CASE("solve_relaxed input validation") {
    CHECK_THROWS_AS(solve_relaxed(kHalf, CostRate{0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_relaxed(kHalf, CostRate{0.0}, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_relaxed({0.2, 0.4}, CostRate{0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_relaxed(kHalf, CostRate{1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("verify_explicit residuals at the closed-form solution") {
    const VerificationReport rep = verify_explicit(kHalf, 1.0, 2001);
    CHECK(rep.max_ode_residual < 1e-8);
    CHECK(rep.smooth_fit_residual_lower < 1e-8);
    CHECK(rep.smooth_fit_residual_upper < 1e-8);
    CHECK(rep.intervention_inequality_margin >= -1e-10);
    CHECK(rep.frequency_residual < 1e-10);
}

TEST_CASE("verify_explicit slope structure at the midpoint") {
    // v'(1/2) = 0: the integrand's bracket vanishes at y = 1/2
    const RelaxedSolution s = symmetric_solution(kHalf, 1.0);
    const double lambda = *s.lambda_diag;
    const double bracket = 2.0 * lambda / (kHalf.sigma * kHalf.sigma) *
                               std::log(0.5 / 0.5) + 0.5 - 0.5;
    CHECK(bracket == 0.0);
    // and lambda is pinned by smooth fit at b: (2 lambda/sigma^2) logit(b) = b - 1/2
    const double b = s.policy.b;
    CHECK(2.0 * lambda / (kHalf.sigma * kHalf.sigma) * std::log(b / (1.0 - b)) ==
          doctest::Approx(b - 0.5).epsilon(1e-13));
}

TEST_CASE("verify_explicit preconditions") {
    CHECK_THROWS_AS(verify_explicit(kSixTenths, 1.0, 101), std::invalid_argument);
    CHECK_THROWS_AS(verify_explicit(kHalf, 0.0, 101), std::invalid_argument);
    CHECK_THROWS_AS(verify_explicit(kHalf, 1.0, 2), std::invalid_argument);
}

TEST_CASE("efficiency") {
    CHECK(efficiency(0.02, 0.02) == 1.0);
    CHECK(efficiency(0.0284782, 0.0284795) == doctest::Approx(0.9999544).epsilon(1e-6));
    CHECK(efficiency(0.0284782, 0.0284795) > 0.99995);
    CHECK(efficiency(0.0198680718400073, 0.02) == doctest::Approx(0.993404).epsilon(1e-5));
    CHECK_THROWS_AS(efficiency(0.01, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(efficiency(0.01, -1.0), std::invalid_argument);
}
