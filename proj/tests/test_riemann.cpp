#include <gtest/gtest.h>

#include <random>

#include "fluxstab/errors.hpp"
#include "fluxstab/numerics.hpp"
#include "fluxstab/riemann.hpp"
#include "oracles.hpp"

using namespace fluxstab;

namespace {

const Interval kUnit{-1.0, 1.0};

// A nonconvex piecewise-linear flux: nodes of u^3 on [-1, 1].
PiecewiseLinearFlux cubic_table(int nodes) {
  std::vector<double> u, f;
  for (int i = 0; i < nodes; ++i) {
    const double x = -1.0 + 2.0 * i / (nodes - 1);
    u.push_back(x);
    f.push_back(x * x * x);
  }
  return PiecewiseLinearFlux(u, f, "cubic");
}

}  // namespace

TEST(ScalarFlux, BuiltinsAreConsistent) {
  for (const auto& f : {burgers(kUnit), scaled_burgers(1.7, kUnit), shifted_burgers(0.1, kUnit),
                        linear_flux(-0.4, kUnit), convex_poly(1.0, 0.1, 0.2, kUnit)}) {
    const FluxCheck c = check_flux(f);
    EXPECT_TRUE(c.ok) << f.name() << ": " << c.message;
  }
  EXPECT_THROW(burgers(kUnit).require_in_domain(1.5), OutOfDomain);
  EXPECT_THROW(scaled_burgers(-1.0, kUnit), std::invalid_argument);
}

TEST(Riemann, BurgersRarefaction) {
  const auto fan = solve_riemann(burgers(kUnit), 0.0, 1.0);
  ASSERT_EQ(fan.waves.size(), 1u);
  const auto& r = std::get<Rarefaction>(fan.waves[0]);
  EXPECT_EQ(r.speed_lo, 0.0);
  EXPECT_EQ(r.speed_hi, 1.0);
  for (double xi : {0.0, 0.25, 0.6, 1.0}) EXPECT_NEAR(r.state_at(xi), xi, 1e-15);
}

TEST(Riemann, BurgersShock) {
  const auto fan = solve_riemann(burgers(kUnit), 1.0, 0.0);
  ASSERT_EQ(fan.waves.size(), 1u);
  EXPECT_DOUBLE_EQ(std::get<Shock>(fan.waves[0]).speed, 0.5);
}

TEST(Riemann, EqualStatesGiveEmptyFan) {
  EXPECT_TRUE(solve_riemann(burgers(kUnit), 0.3, 0.3).waves.empty());
  EXPECT_TRUE(solve_riemann(cubic_table(9), 0.3, 0.3).waves.empty());
}

TEST(Riemann, OutOfDomainAndNonconvex) {
  EXPECT_THROW(solve_riemann(burgers(kUnit), 0.0, 2.0), OutOfDomain);
  const ScalarFlux cubic({.name = "cubic",
                          .f = [](double u) { return u * u * u; },
                          .df = [](double u) { return 3 * u * u; },
                          .domain = kUnit,
                          .lambda_hat = 3.0});
  EXPECT_THROW(solve_riemann(cubic, -1.0, 1.0), std::invalid_argument);
}

TEST(EvalFan, ExampleValues) {
  const auto shock = solve_riemann(burgers(kUnit), 1.0, 0.0);
  EXPECT_EQ(eval_fan(shock, 1.0, 0.4), 1.0);
  EXPECT_EQ(eval_fan(shock, 1.0, 0.5), 1.0);  // left state at the shock
  EXPECT_EQ(eval_fan(shock, 1.0, 0.6), 0.0);
  const auto rare = solve_riemann(burgers(kUnit), 0.0, 1.0);
  EXPECT_NEAR(eval_fan(rare, 2.0, 1.0), 0.5, 1e-15);
  EXPECT_EQ(eval_fan(rare, 1.0, -3.0), 0.0);
  EXPECT_EQ(eval_fan(rare, 1.0, 3.0), 1.0);
  EXPECT_THROW(eval_fan(rare, 0.0, 1.0), std::invalid_argument);
}

TEST(Riemann, PiecewiseLinearHullMergesCollinearNodes) {
  // Interpolated Burgers: increasing data gives one jump per segment; a
  // linear table gives a single contact.
  const auto pl = PiecewiseLinearFlux::interpolate(burgers(kUnit), 5);
  const auto fan = solve_riemann(pl, -1.0, 1.0);
  ASSERT_EQ(fan.waves.size(), 4u);
  EXPECT_DOUBLE_EQ(std::get<Shock>(fan.waves[0]).speed, -0.75);
  EXPECT_DOUBLE_EQ(std::get<Shock>(fan.waves[3]).speed, 0.75);
  const PiecewiseLinearFlux lin({-1, -0.5, 0, 0.5, 1}, {-2, -1, 0, 1, 2});
  EXPECT_EQ(solve_riemann(lin, -1.0, 1.0).waves.size(), 1u);
  EXPECT_EQ(solve_riemann(pl, 1.0, -1.0).waves.size(), 1u);
}

TEST(Riemann, NonconvexPiecewiseLinearFansAreAdmissible) {
  const auto pl = cubic_table(33);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 300; ++i) {
    const double a = pl.project(u(rng)), b = pl.project(u(rng));
    const auto fan = solve_riemann(pl, a, b);
    const FanCheck c = check_fan(pl, fan, 1e-9);
    EXPECT_TRUE(c.ok) << a << " | " << b << ": " << c.message;
  }
  // Upward jump across the inflection: hull gives a contact then a fan.
  const auto fan = solve_riemann(pl, -1.0, 1.0);
  EXPECT_GE(fan.waves.size(), 2u);
}

TEST(Riemann, RandomConvexFansAreAdmissibleAndSelfSimilar) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1, 1), s(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    const ScalarFlux f = oracle::random_convex_flux(rng);
    const double a = u(rng), b = u(rng);
    const auto fan = solve_riemann(f, a, b);
    const FanCheck c = check_fan(f, fan, 1e-6);
    EXPECT_TRUE(c.ok) << c.message;
    const double t = s(rng), x = u(rng) * 3, scale = s(rng);
    EXPECT_NEAR(eval_fan(fan, t, x), eval_fan(fan, scale * t, scale * x), 1e-12);
  }
}

TEST(RiemannL1, IdenticalFluxesAreZero) {
  EXPECT_EQ(riemann_l1_diff(burgers(kUnit), burgers(kUnit), -0.5, 0.8), 0.0);
}

TEST(RiemannL1, LinearFluxes) {
  for (double h : {0.5, -1.5}) {
    const Interval k{-2, 2};
    EXPECT_NEAR(riemann_l1_diff(linear_flux(0.3, k), linear_flux(-0.9, k), 0.0, h), 1.2 * std::abs(h),
                1e-14);
  }
}

TEST(RiemannL1, ScaledBurgersShock) {
  // Shocks at 1/2 and alpha/2 with unit jump.
  for (double alpha : {0.5, 1.3, 2.0}) {
    const Interval k{-1, 1};
    const ScalarFlux f = burgers(k), g = scaled_burgers(alpha, k);
    const double exact = riemann_l1_diff(f, g, 1.0, 0.0);
    EXPECT_NEAR(exact, std::abs(1 - alpha) / 2, 1e-14);
    const auto ff = solve_riemann(f, 1.0, 0.0), gg = solve_riemann(g, 1.0, 0.0);
    const double sampled = oracle::sampled_l1([&](double x) { return eval_fan(ff, 1, x); },
                                              [&](double x) { return eval_fan(gg, 1, x); }, -2,
                                              2, 400000);
    EXPECT_NEAR(exact, sampled, 1e-5);
  }
}

TEST(RiemannL1, RarefactionOverlapMatchesSampledOracle) {
  const ScalarFlux f = burgers(kUnit), g = scaled_burgers(1.5, kUnit);
  const auto ff = solve_riemann(f, -0.8, 0.9), gg = solve_riemann(g, -0.8, 0.9);
  const double sampled = oracle::sampled_l1([&](double x) { return eval_fan(ff, 1, x); },
                                            [&](double x) { return eval_fan(gg, 1, x); }, -2, 2,
                                            400000);
  EXPECT_NEAR(riemann_l1_diff(f, g, -0.8, 0.9), sampled, 1e-7);
}

TEST(RiemannL1, ScalingSymmetryRandom) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1, 1), s(0.2, 5);
  for (int i = 0; i < 100; ++i) {
    const ScalarFlux f = oracle::random_convex_flux(rng), g = oracle::random_convex_flux(rng);
    const double a = u(rng), b = u(rng), t = s(rng);
    const double one = riemann_l1_diff(f, g, a, b, 1.0);
    EXPECT_NEAR(riemann_l1_diff(f, g, a, b, t), t * one, 1e-6 * (1e-12 + t * one));
    EXPECT_NEAR(riemann_l1_diff(g, f, a, b), one, 1e-12 + 1e-9 * one);
  }
}

TEST(HatD, Examples) {
  EXPECT_EQ(hat_d_estimate(burgers(kUnit), burgers(kUnit)).estimate, 0.0);
  const auto lin = hat_d_estimate(linear_flux(0.2, kUnit), linear_flux(0.7, kUnit));
  EXPECT_NEAR(lin.estimate, 0.5, 1e-14);
  EXPECT_TRUE(lin.lower_bound);
  // Translation of frame: every g-solution is the f-solution moved by 0.1 t.
  const auto sh = hat_d_estimate(burgers(kUnit), shifted_burgers(0.1, kUnit));
  EXPECT_NEAR(sh.estimate, 0.1, 1e-12);
  EXPECT_NEAR(riemann_l1_diff(burgers(kUnit), shifted_burgers(0.1, kUnit), 0.4, -0.7),
              0.1 * 1.1, 1e-12);
}

TEST(HatD, DominatesDerivativeGap) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const ScalarFlux f = oracle::random_convex_flux(rng), g = oracle::random_convex_flux(rng);
    double gap = 0.0;
    for (int k = 0; k <= 512; ++k) {
      const double u = -1.0 + 2.0 * k / 512;
      gap = std::max(gap, std::abs(f.deriv(u) - g.deriv(u)));
    }
    EXPECT_GE(hat_d_estimate(f, g).estimate, gap - 0.01 * gap - 1e-9);
  }
}

TEST(HatD, SamplerLayout) {
  const auto pairs = sampler_pairs(kUnit, RiemannSampler{});
  EXPECT_EQ(pairs.size(), 64u * 63u + 128u);
  EXPECT_NEAR(pairs.back().first - pairs.back().second, 1e-3, 1e-15);
}

TEST(Numerics, LoglogSlopeAndRoots) {
  const std::vector<double> x{1, 2, 4, 8}, y{3, 0.75, 0.1875, 0.046875};
  EXPECT_NEAR(numerics::loglog_slope(x, y), -2.0, 1e-12);
  EXPECT_NEAR(numerics::bisect_root([](double v) { return v * v - 2; }, 0, 2), std::sqrt(2.0),
              1e-14);
  EXPECT_NEAR(numerics::golden_minimize([](double v) { return (v - 0.3) * (v - 0.3); }, -1, 1),
              0.3, 1e-7);
  EXPECT_NEAR(numerics::adaptive_simpson([](double v) { return std::sin(v); }, 0, M_PI), 2.0,
              1e-9);
}
