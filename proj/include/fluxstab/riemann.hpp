#ifndef FLUXSTAB_RIEMANN_HPP_
#define FLUXSTAB_RIEMANN_HPP_

#include <functional>
#include <variant>
#include <vector>

#include "fluxstab/scalar_flux.hpp"

namespace fluxstab {

/// Discontinuity travelling at `speed`. Contact discontinuities of linear
/// fluxes and the jumps of piecewise-linear fans use the same type.
struct Shock {
  double speed = 0.0;
  double left = 0.0;
  double right = 0.0;
};

/// Centred rarefaction covering speeds [speed_lo, speed_hi].
struct Rarefaction {
  double speed_lo = 0.0;
  double speed_hi = 0.0;
  double left = 0.0;
  double right = 0.0;
  std::function<double(double)> state_at;  // xi -> u(xi), f'(u(xi)) = xi
};

using Wave = std::variant<Shock, Rarefaction>;

/// Self-similar solution of a scalar Riemann problem, waves ordered left to right.
struct RiemannFan {
  double left = 0.0;
  double right = 0.0;
  std::vector<Wave> waves;

  /// Value at xi = x/t. A shock sitting exactly at xi reports its left state.
  double at_speed(double xi) const;
  /// Speeds where the fan changes character: shock speeds and rarefaction edges.
  std::vector<double> breakpoints() const;
};

RiemannFan solve_riemann(const ScalarFlux& flux, double u_left, double u_right);
RiemannFan solve_riemann(const PiecewiseLinearFlux& flux, double u_left, double u_right);
RiemannFan solve_riemann(const AnyFlux& flux, double u_left, double u_right);

/// Value of the fan's solution at (t, x); t must be positive.
double eval_fan(const RiemannFan& fan, double t, double x);

struct FanCheck {
  bool ok = true;
  std::string message;
};

/// Ordering, state chaining, Rankine-Hugoniot and (for smooth fluxes) Lax
/// admissibility of every wave, plus f'(u(xi)) = xi inside rarefactions.
FanCheck check_fan(const AnyFlux& flux, const RiemannFan& fan, double tol);

/// ||S^f_t u - S^g_t u||_{L^1} for Riemann data u_left | u_right. Exact on
/// cells where both fans are constant; adaptive Simpson elsewhere.
double riemann_l1_diff(const AnyFlux& f, const AnyFlux& g, double u_left, double u_right,
                       double t = 1.0);

/// L1 distance between two fans at time t.
double fan_l1_diff(const RiemannFan& a, const RiemannFan& b, double t = 1.0);

struct RiemannSampler {
  int grid = 64;            // grid x grid uniform pairs over K x K
  int near_diagonal = 64;   // base points for pairs (u, u + gap) and (u + gap, u)
  double gap = 1e-3;
};

struct FluxDistanceReport {
  double estimate = 0.0;
  double argmax_left = 0.0;
  double argmax_right = 0.0;
  std::size_t samples = 0;
  bool lower_bound = true;  // a sampled sup never exceeds the true sup
};

/// Sampled lower bound of the flux distance: max over Riemann data in the
/// sampler of riemann_l1_diff(f, g, uL, uR, 1) / |uR - uL|.
FluxDistanceReport hat_d_estimate(const AnyFlux& f, const AnyFlux& g,
                                  const RiemannSampler& sampler = {});

/// The (uL, uR) pairs visited by hat_d_estimate, in evaluation order.
std::vector<std::pair<double, double>> sampler_pairs(Interval domain,
                                                     const RiemannSampler& sampler);

}  // namespace fluxstab

#endif  // FLUXSTAB_RIEMANN_HPP_
