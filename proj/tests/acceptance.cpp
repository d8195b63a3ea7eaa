// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fluxstab/euler.hpp"
#include "fluxstab/flux_metrics.hpp"
#include "fluxstab/front_tracking.hpp"
#include "fluxstab/lax_oleinik.hpp"
#include "fluxstab/linear_hd.hpp"
#include "fluxstab/numerics.hpp"
#include "oracles.hpp"

using namespace fluxstab;

namespace {

const Interval kUnit{-1.0, 1.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = budget_s <= 0 || secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

PiecewiseConstant pulse() { return PiecewiseConstant::scalar({0.0, 1.0}, {0.0, 1.0, 0.0}); }

struct ConvexCase {
  std::string label;
  ScalarFlux f;
  ScalarFlux g;
  InitialData datum;
  double t;
  double a;
  double b;
};

std::vector<ConvexCase> convex_suite() {
  std::vector<ConvexCase> s;
  const auto remark_g = shifted_burgers(-1.0, kUnit);
  for (int n : {1, 2, 3, 4}) {
    s.push_back({"remark n=" + std::to_string(n), burgers(kUnit), remark_g, InitialData::sawtooth(n),
                 std::ldexp(1.0, -n), 0.0, 1.0});
  }
  s.push_back({"scaled 1.2 sawtooth 2", burgers(kUnit), scaled_burgers(1.2, kUnit),
               InitialData::sawtooth(2), 0.25, 0.0, 1.0});
  s.push_back({"shifted 0.1 sawtooth 3", burgers(kUnit), shifted_burgers(0.1, kUnit),
               InitialData::sawtooth(3), 0.125, -0.5, 1.5});
  s.push_back({"quartic pulse", convex_poly(1.0, 0.1, 0.1, kUnit), burgers(kUnit),
               InitialData::steps(pulse()), 0.5, -1.0, 2.0});
  s.push_back({"scaled pair pulse", scaled_burgers(0.8, kUnit), scaled_burgers(1.3, kUnit),
               InitialData::steps(pulse()), 1.0, -1.0, 3.0});
  s.push_back({"shifted 0.05 pulse", burgers(kUnit), shifted_burgers(0.05, kUnit),
               InitialData::steps(pulse()), 2.0, 0.0, 2.0});
  s.push_back({"periodic offset", burgers(kUnit), scaled_burgers(1.5, kUnit),
               InitialData::periodic_step(0.5, 0.2, 0.8, -0.3, 0.1), 0.3, 0.0, 1.0});
  s.push_back({"quartic sawtooth 1", convex_poly(0.8, -0.1, 0.05, kUnit), burgers(kUnit),
               InitialData::sawtooth(1), 0.4, 0.0, 2.0});
  return s;
}

Matrix random_diagonalizable(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix r{{1 + 0.5 * u(rng), 0.5 * u(rng)}, {0.5 * u(rng), 1 + 0.5 * u(rng)}};
  const Matrix d{{2 * u(rng), 0}, {0, 2 * u(rng)}};
  return r * d * inverse(r);
}

}  // namespace

int main() {
  criterion(1, "counterexample distance equals 1 for n = 1..6", 5.0, [] {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) worst = std::max(worst, std::abs(rexp_counterexample(n).l1_distance - 1.0));
    return Outcome{worst <= 1e-3, "max |gap - 1| = " + fmt(worst)};
  });

  criterion(2, "classical limit slope in [-2.3, -1.7]", 120.0, [] {
    const auto r = classical_limit_experiment({8, 16, 32, 64}, {2.0, 0.0}, {1.0, 0.0}, 0.2, 2000, 1.0);
    std::string gaps;
    for (const auto& row : r.rows) gaps += " " + fmt(row.l1_gap);
    return Outcome{r.slope >= -2.3 && r.slope <= -1.7, "slope " + fmt(r.slope) + ", gaps" + gaps};
  });

  criterion(3, "Jacobian gap ratio in [0.23, 0.27]", 10.0, [] {
    const auto cl = SystemFlux::classical(1.0);
    std::vector<double> g;
    for (double c : {50.0, 100.0, 200.0}) g.push_back(jacobian_gap(SystemFlux::relativistic(1.0, c), cl));
    const double r1 = g[1] / g[0], r2 = g[2] / g[1];
    const bool ok = r1 >= 0.23 && r1 <= 0.27 && r2 >= 0.23 && r2 <= 0.27;
    return Outcome{ok, "ratios " + fmt(r1) + ", " + fmt(r2)};
  });

  criterion(4, "semigroup gap linear in flux gap and in time", 30.0, [] {
    const auto f = PiecewiseLinearFlux::interpolate(burgers(kUnit), 512);
    auto g = [](double eps) { return PiecewiseLinearFlux::interpolate(shifted_burgers(eps, kUnit), 512); };
    std::vector<double> eps{0.02, 0.04, 0.08}, by_eps, times{0.25, 0.5, 1.0}, by_t;
    for (double e : eps) by_eps.push_back(semigroup_l1_diff(f, g(e), pulse(), 1.0));
    const auto g4 = g(0.04);
    for (double T : times) by_t.push_back(semigroup_l1_diff(f, g4, pulse(), T));
    const double se = numerics::loglog_slope(eps, by_eps), st = numerics::loglog_slope(times, by_t);
    const bool ok = se >= 0.95 && se <= 1.05 && st >= 0.95 && st <= 1.05;
    return Outcome{ok, "eps slope " + fmt(se) + ", T slope " + fmt(st)};
  });

  const auto suite = convex_suite();

  criterion(5, "L-infinity bound on " + std::to_string(suite.size()) + " cases", 60.0, [&] {
    int violations = 0;
    double remark_lhs = 0.0;
    for (const auto& c : suite) {
      const auto r = linfty_bound_check(c.f, c.g, c.datum, c.t, c.a, c.b);
      if (!r.holds) ++violations;
      if (c.label == "remark n=1") remark_lhs = r.lhs;
    }
    const bool ok = violations == 0 && suite.size() >= 10 && std::abs(remark_lhs - 1.0) <= 1e-3;
    return Outcome{ok, std::to_string(violations) + " violations, counterexample lhs " + fmt(remark_lhs)};
  });

  criterion(6, "Oleinik TV bound and one-sided Lipschitz (10^4 pairs per case)", 0.0, [&] {
    int tv_fail = 0, os_fail = 0;
    double worst = 0.0;
    std::uint64_t seed = 1;
    for (const auto& c : suite) {
      for (const ScalarFlux* flux : {&c.f, &c.g}) {
        const LaxOleinikProblem p{*flux, c.datum};
        if (!oleinik_tv_bound_check(p, c.t, c.a, c.b).holds) ++tv_fail;
        const double lam = flux->lambda_hat();
        const auto os = oleinik_one_sided_check(p, c.t, {c.a - 2 * lam * c.t, c.b + 2 * lam * c.t}, 10000, seed++);
        if (!os.holds) ++os_fail;
        worst = std::max(worst, os.worst_excess);
      }
    }
    return Outcome{tv_fail == 0 && os_fail == 0, std::to_string(tv_fail) + " TV and " +
                                                     std::to_string(os_fail) +
                                                     " one-sided failures, worst excess " + fmt(worst)};
  });

  criterion(7, "linear metric axioms, operator-norm bound, worked example", 0.0, [] {
    std::mt19937_64 rng(2718);
    int axiom_fail = 0, norm_fail = 0;
    for (int i = 0; i < 100; ++i) {
      const Matrix a = random_diagonalizable(rng), b = random_diagonalizable(rng), c = random_diagonalizable(rng);
      const double ab = hat_d_lin_value(a, b);
      if (std::abs(hat_d_lin_value(a, a)) > 1e-6) ++axiom_fail;
      if (std::abs(ab - hat_d_lin_value(b, a)) > 1e-6) ++axiom_fail;
      if (ab > hat_d_lin_value(a, c) + hat_d_lin_value(c, b) + 1e-6) ++axiom_fail;
    }
    for (int i = 0; i < 100; ++i) {
      const Matrix a = random_diagonalizable(rng), b = random_diagonalizable(rng);
      if (hat_d_lin_value(a, b) < operator_norm(b - a) - 1e-6) ++norm_fail;
    }
    const double ex = hat_d_lin_value(Matrix{{0, 0}, {0, 1}}, Matrix{{0, 0}, {0, 2}});
    const bool ok = axiom_fail == 0 && norm_fail == 0 && std::abs(ex - 1.0) <= 1e-6;
    return Outcome{ok, std::to_string(axiom_fail) + " axiom and " + std::to_string(norm_fail) +
                           " norm failures, example " + fmt(ex)};
  });

  criterion(8, "flux distance dominates derivative gap", 0.0, [] {
    const std::vector<std::pair<ScalarFlux, ScalarFlux>> convex{
        {burgers(kUnit), scaled_burgers(1.2, kUnit)},
        {burgers(kUnit), shifted_burgers(0.1, kUnit)},
        {convex_poly(1.0, 0.1, 0.1, kUnit), burgers(kUnit)},
        {convex_poly(0.8, -0.1, 0.05, kUnit), convex_poly(1.2, 0.05, 0.0, kUnit)},
        {scaled_burgers(0.7, kUnit), convex_poly(0.5, 0.0, 0.15, kUnit)},
    };
    const auto us = uniform_samples(kUnit, 4096);
    double worst_ratio = 1e300;
    bool ok = true;
    for (const auto& [f, g] : convex) {
      const auto r = check_pgeneral(f, g, us);
      ok = ok && r.holds;
      worst_ratio = std::min(worst_ratio, r.lhs / r.rhs);
    }
    double worst_linear = 0.0;
    for (auto [a, b] : {std::pair{0.3, -0.4}, {1.0, 1.25}, {-0.6, 0.9}}) {
      const auto r = check_pgeneral(linear_flux(a, kUnit), linear_flux(b, kUnit), us);
      worst_linear = std::max(worst_linear, std::abs(r.lhs - r.rhs) / r.rhs);
    }
    ok = ok && worst_linear <= 0.01;
    return Outcome{ok, "min ratio " + fmt(worst_ratio) + ", linear rel. mismatch " + fmt(worst_linear)};
  });

  criterion(9, "stability bound on the scalar suite, sharp for a linear jump", 0.0, [] {
    const std::vector<std::pair<ScalarFlux, ScalarFlux>> pairs{
        {burgers(kUnit), shifted_burgers(0.04, kUnit)},
        {burgers(kUnit), scaled_burgers(1.2, kUnit)},
        {convex_poly(1.0, 0.1, 0.1, kUnit), burgers(kUnit)},
        {scaled_burgers(0.8, kUnit), convex_poly(0.5, 0.0, 0.15, kUnit)},
    };
    const std::vector<PiecewiseConstant> data{
        pulse(), PiecewiseConstant::scalar({0.0}, {1.0, -1.0}),
        PiecewiseConstant::scalar({-0.5, 0.0, 0.5, 1.0}, {0.0, 0.8, -0.6, 0.4, 0.0})};
    int total = 0, violations = 0;
    for (const auto& [f, g] : pairs) {
      const auto pf = PiecewiseLinearFlux::interpolate(f, 257), pg = PiecewiseLinearFlux::interpolate(g, 257);
      const double hd = hat_d_estimate(pf, pg).estimate;
      for (const auto& u0 : data) {
        for (double T : {0.25, 0.5, 1.0}) {
          ++total;
          if (!check_tmain(pf, pg, u0, T, 1.0, hd).holds) ++violations;
        }
      }
    }
    const auto a = PiecewiseLinearFlux::interpolate(linear_flux(0.3, kUnit), 9);
    const auto b = PiecewiseLinearFlux::interpolate(linear_flux(-0.5, kUnit), 9);
    const auto sharp = check_tmain(a, b, PiecewiseConstant::scalar({0.0}, {-0.5, 0.5}), 1.0);
    const double gap = std::abs(sharp.lhs - sharp.rhs);
    return Outcome{violations == 0 && gap <= 1e-9,
                   std::to_string(violations) + "/" + std::to_string(total) +
                       " violations, linear |lhs - rhs| = " + fmt(gap)};
  });

  criterion(10, "front-tracking properties (200 instances) and cross-validation", 0.0, [] {
    std::mt19937_64 rng(10);
    const auto f = PiecewiseLinearFlux::interpolate(burgers(kUnit), 33);
    std::uniform_real_distribution<double> tdist(0.1, 3.0);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
      const auto u = project_to_nodes(f, oracle::random_compact_steps(rng, 8, -1, 1, -1, 1));
      const auto w = project_to_nodes(f, oracle::random_compact_steps(rng, 8, -1, 1, -1, 1));
      const double T = tdist(rng);
      const auto su = ft_evolve(f, u, T).profile, sw = ft_evolve(f, w, T).profile;
      const Interval win{-1 - f.lambda_hat() * T - 1, 1 + f.lambda_hat() * T + 1};
      if (l1_distance(su, sw, win) > l1_distance(u, w, win) + 1e-10) ++bad;
      if (su.total_variation() > u.total_variation() + 1e-10) ++bad;
      if (std::abs(su.integral(win)[0] - u.integral(win)[0]) > 1e-10) ++bad;
    }
    const double T = 3.0;
    const LaxOleinikProblem lo{burgers(kUnit), InitialData::steps(pulse())};
    std::vector<double> gaps;
    for (std::size_t n : {128u, 256u, 512u, 1024u}) {
      const auto prof = ft_evolve(PiecewiseLinearFlux::interpolate(burgers(kUnit), n), pulse(), T).profile;
      gaps.push_back(numerics::refine_midpoint(
                         [&](double x) { return std::abs(prof.scalar_at(x) - lax_oleinik_eval(lo, T, x)); },
                         -1.0, 4.0, 1 << 15, 1 << 17, 1e-4)
                         .value);
    }
    double min_factor = 1e300;
    for (std::size_t i = 1; i < gaps.size(); ++i) min_factor = std::min(min_factor, gaps[i - 1] / gaps[i]);
    return Outcome{bad == 0 && min_factor >= 1.8,
                   std::to_string(bad) + " property violations, min halving factor " + fmt(min_factor) +
                       " (gap at 1024 nodes " + fmt(gaps.back()) + ")"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
