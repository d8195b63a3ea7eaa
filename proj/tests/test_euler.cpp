#include <gtest/gtest.h>

#include <cmath>

#include "fluxstab/errors.hpp"
#include "fluxstab/euler.hpp"
#include "oracles.hpp"

using namespace fluxstab;

TEST(Velocity, ZeroMomentumAndClassicalLimit) {
  EXPECT_EQ(recover_velocity(1.3, 0.0, 10.0), 0.0);
  // Bisection on q = (rho + p/c^2) v / (1 - v^2/c^2).
  const double c = 1e6;
  const double v_oracle = oracle::bisect(
      [&](double v) { return (1.0 + 1.0 / (c * c)) * v / (1 - v * v / (c * c)) - 0.1; }, 0, 1);
  EXPECT_NEAR(recover_velocity(1.0, 0.1, c), v_oracle, 1e-12);
  EXPECT_NEAR(recover_velocity(1.0, 0.1, c), 0.1, 1e-10);
}

TEST(Velocity, MatchesBisectionAtModerateC) {
  for (double c : {2.0, 5.0, 20.0}) {
    for (double rho : {0.5, 1.0, 3.0}) {
      for (double q : {-1.5, 0.2, 2.0}) {
        const double v_oracle = oracle::bisect(
            [&](double v) { return (rho + rho / (c * c)) * v / (1 - v * v / (c * c)) - q; },
            -c * (1 - 1e-15), c * (1 - 1e-15));
        EXPECT_NEAR(recover_velocity(rho, q, c), v_oracle, 1e-11);
        EXPECT_LT(std::abs(recover_velocity(rho, q, c)), c);
      }
    }
  }
}

TEST(Velocity, OddAndIncreasing) {
  for (double rho : {0.5, 1.0, 4.0}) {
    double prev = -1e300;
    for (int i = -40; i <= 40; ++i) {
      const double q = 0.05 * i;
      const double v = recover_velocity(rho, q, 3.0);
      EXPECT_EQ(v, -recover_velocity(rho, -q, 3.0));
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
  EXPECT_THROW(recover_velocity(0.05, 0.1, 5.0), OutOfDomain);
}

TEST(SystemFlux, RestStateFluxes) {
  const auto cl = SystemFlux::classical(1.0);
  EXPECT_EQ(cl({1.0, 0.0}), (std::array<double, 2>{0.0, 1.0}));
  for (double c : {5.0, 50.0}) {
    const auto rel = SystemFlux::relativistic(1.0, c);
    const auto f = rel({1.0, 0.0});
    EXPECT_EQ(f[0], 0.0);
    EXPECT_DOUBLE_EQ(f[1], 1.0);
    EXPECT_DOUBLE_EQ(phi_c(1.0, 0.0, c), 1.0 + 1.0 / (c * c));
  }
  EXPECT_THROW(SystemFlux::relativistic(1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(cl.require_admissible({0.01, 0.0}), OutOfDomain);
}

TEST(SystemFlux, RelativisticApproachesClassical) {
  const EulerState s{1.5, 0.3};
  const auto cl = SystemFlux::classical(1.0);
  auto gap = [&](double c) {
    const auto a = SystemFlux::relativistic(1.0, c)(s), b = cl(s);
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };
  EXPECT_LE(gap(100), 1e-3);
  EXPECT_NEAR(gap(200) / gap(100), 0.25, 0.01);
  EXPECT_NEAR(gap(400) / gap(200), 0.25, 0.01);
}

TEST(PhiC, AtLeastOneAndDecaysLikeInverseSquare) {
  double prev_scaled = -1;
  for (double c : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    double worst = 0.0;
    for (double rho = 0.5; rho <= 4.0; rho += 0.25) {
      for (double q = -2.0; q <= 2.0; q += 0.25) {
        const double phi = phi_c(rho, q, c);
        EXPECT_GE(phi, 1.0);
        worst = std::max(worst, phi - 1.0);
      }
    }
    const double scaled = worst * c * c;
    if (prev_scaled > 0) EXPECT_NEAR(scaled / prev_scaled, 1.0, 0.05);
    prev_scaled = scaled;
  }
}

TEST(Jacobian, ClassicalEigenvaluesViaDecompose) {
  const auto cl = SystemFlux::classical(1.0);
  for (double rho : {0.5, 1.0, 2.5}) {
    for (double q : {-1.0, 0.0, 1.7}) {
      const auto e = decompose(cl.jacobian({rho, q}));
      EXPECT_NEAR(e.eigenvalues[0], q / rho - 1.0, 1e-9);
      EXPECT_NEAR(e.eigenvalues[1], q / rho + 1.0, 1e-9);
    }
  }
  const auto num = numerical_jacobian([&](const EulerState& s) { return cl(s); }, {1.3, 0.4});
  EXPECT_LT((num - cl.jacobian({1.3, 0.4})).max_abs(), 1e-9);
}

TEST(Jacobian, GapScalesLikeInverseSquare) {
  const auto cl = SystemFlux::classical(1.0);
  const double g50 = jacobian_gap(SystemFlux::relativistic(1.0, 50), cl, 64);
  const double g100 = jacobian_gap(SystemFlux::relativistic(1.0, 100), cl, 64);
  EXPECT_GE(g100 / g50, 0.23);
  EXPECT_LE(g100 / g50, 0.27);
  EXPECT_LE(jacobian_gap(SystemFlux::relativistic(1.0, 1e8), cl, 32), 1e-12);
}

TEST(FiniteVolume, ConstantStateUnchanged) {
  const auto flux = SystemFlux::relativistic(1.0, 10.0);
  const auto u0 = riemann_grid(-1, 1, 200, {1.2, 0.3}, {1.2, 0.3});
  const auto run = fv_evolve(flux, u0, 0.5);
  for (const auto& c : run.solution.cells) {
    EXPECT_NEAR(c.rho, 1.2, 1e-14);
    EXPECT_NEAR(c.q, 0.3, 1e-14);
  }
  EXPECT_DOUBLE_EQ(run.solution.t, 0.5);
}

TEST(FiniteVolume, ConservationAndDensityFloor) {
  const auto flux = SystemFlux::classical(1.0);
  const auto u0 = riemann_grid(-1.5, 1.5, 600, {2.0, 0.0}, {1.0, 0.0});
  const auto run = fv_evolve(flux, u0, 0.2);
  EXPECT_LT(std::abs(run.mass_residual), 1e-12);
  EXPECT_LT(std::abs(run.momentum_residual), 1e-12);
  EXPECT_GE(run.min_rho, 1.0 - 0.05);
  EXPECT_GT(run.steps, 0u);
}

TEST(FiniteVolume, RiemannGridAveragesStraddlingCell) {
  const auto g = riemann_grid(0.0, 1.0, 4, {2.0, 1.0}, {1.0, 0.0}, 0.3);
  EXPECT_EQ(g.cells[0].rho, 2.0);
  EXPECT_NEAR(g.cells[1].rho, 2.0 * 0.05 / 0.25 + 1.0 * 0.2 / 0.25, 1e-15);
  EXPECT_EQ(g.cells[2].rho, 1.0);
}

TEST(FiniteVolume, VacuumAbort) {
  const auto flux = SystemFlux::classical(1.0, {0.5, 4, -2, 2}, 0.45);
  const auto u0 = riemann_grid(-1, 1, 200, {0.5, -0.9}, {0.5, 0.9});
  EXPECT_THROW(fv_evolve(flux, u0, 1.0), NumericalAbort);
}

TEST(ClassicalLimit, HugeSpeedOfLightIsAtNoiseFloor) {
  const auto r = classical_limit_experiment({1e8, 2e8}, {2.0, 0.0}, {1.0, 0.0}, 0.2, 400, 1.0);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) EXPECT_LT(row.l1_gap, 1e-12);
}

TEST(ClassicalLimit, GapDecaysLikeInverseSquare) {
  const auto r = classical_limit_experiment({8, 16, 32}, {2.0, 0.0}, {1.0, 0.0}, 0.2, 500, 1.0);
  EXPECT_GE(r.slope, -2.3);
  EXPECT_LE(r.slope, -1.7);
  for (const auto& row : r.rows) EXPECT_LT(std::abs(row.mass_residual), 1e-12);
}
