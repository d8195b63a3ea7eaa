#ifndef FLUXSTAB_EULER_HPP_
#define FLUXSTAB_EULER_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fluxstab/linear_hd.hpp"

namespace fluxstab {

/// Density and momentum (mass flux).
struct EulerState {
  double rho = 1.0;
  double q = 0.0;
};

/// Compact state region [rho_lo, rho_hi] x [q_lo, q_hi].
struct StateBox {
  double rho_lo = 0.5;
  double rho_hi = 4.0;
  double q_lo = -2.0;
  double q_hi = 2.0;
};

enum class SystemKind { Classical, Relativistic };

/// Isothermal p-system with pressure p = sigma^2 rho, classical or with the
/// relativistic correction factor phi_c on the convective momentum flux.
class SystemFlux {
 public:
  static SystemFlux classical(double sigma, StateBox box = {}, double rho_min = 0.1);
  static SystemFlux relativistic(double sigma, double c, StateBox box = {}, double rho_min = 0.1);

  SystemKind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  /// Speed of light; infinite for the classical system.
  double c() const { return c_; }
  const StateBox& box() const { return box_; }
  double rho_min() const { return rho_min_; }
  /// Bound on the characteristic speeds over the box, with a 10% margin.
  double lambda_hat() const { return lambda_hat_; }

  /// Throws OutOfDomain when rho < rho_min.
  void require_admissible(const EulerState& s) const;
  std::array<double, 2> operator()(const EulerState& s) const;
  /// Correction factor multiplying q^2/rho; 1 for the classical system.
  double phi(const EulerState& s) const;
  /// Velocity carried by the state.
  double velocity(const EulerState& s) const;
  /// Closed form for the classical system, Richardson-extrapolated central
  /// differences for the relativistic one.
  Matrix jacobian(const EulerState& s) const;

 private:
  SystemFlux() = default;
  double sampled_speed_bound() const;

  SystemKind kind_ = SystemKind::Classical;
  double sigma_ = 1.0;
  double c_ = 0.0;
  StateBox box_;
  double rho_min_ = 0.1;
  double lambda_hat_ = 0.0;
};

/// Subluminal root of (q/c^2) v^2 + rho (1 + sigma^2/c^2) v - q = 0.
double recover_velocity(double rho, double q, double c, double sigma = 1.0,
                        double rho_min = 0.1);

/// 1 + (1/c^2)(1 - v^2/c^2) p / (rho + (v^2/c^2)(p/c^2)), p = sigma^2 rho.
double phi_c(double rho, double q, double c, double sigma = 1.0, double rho_min = 0.1);

/// Jacobian of `f` at `s` by central differences with one Richardson level.
Matrix numerical_jacobian(const std::function<std::array<double, 2>(const EulerState&)>& f,
                          const EulerState& s, double h_scale = 1e-5);

/// max over a grid x grid sample of the box of the spectral norm of Df_c - Df.
double jacobian_gap(const SystemFlux& relativistic, const SystemFlux& classical, int grid = 256);

struct GridSolution {
  double x_lo = 0.0;
  double dx = 1.0;
  std::vector<EulerState> cells;
  double t = 0.0;

  double x_hi() const { return x_lo + dx * static_cast<double>(cells.size()); }
  double center(std::size_t i) const { return x_lo + dx * (static_cast<double>(i) + 0.5); }
  /// Sum of cell averages times dx, per component.
  std::array<double, 2> totals() const;
};

/// Cell averages of the Riemann datum left | right with the jump at x0.
GridSolution riemann_grid(double x_lo, double x_hi, std::size_t cells, EulerState left,
                          EulerState right, double x0 = 0.0);

/// Cellwise sum of dx |a_i - b_i| (Euclidean in (rho, q)); grids must match.
double grid_l1_distance(const GridSolution& a, const GridSolution& b);

struct FvOptions {
  double cfl = 0.45;
  // Wave-speed bound used by HLL; defaults to the flux's own lambda_hat.
  std::optional<double> speed_bound;
};

struct FvRun {
  GridSolution solution;
  std::size_t steps = 0;
  double min_rho = 0.0;
  // Change of the totals plus the time-integrated boundary fluxes; zero up
  // to rounding for a conservative scheme.
  double mass_residual = 0.0;
  double momentum_residual = 0.0;
};

/// First-order finite volumes with the HLL flux and outflow boundaries,
/// advanced to exactly T. Throws NumericalAbort when a density drops
/// below rho_min.
FvRun fv_evolve(const SystemFlux& flux, const GridSolution& u0, double T, FvOptions opt = {});

struct ClassicalLimitRow {
  double c = 0.0;
  double l1_gap = 0.0;
  double mass_residual = 0.0;
  double momentum_residual = 0.0;
};

struct ClassicalLimitResult {
  std::vector<ClassicalLimitRow> rows;
  double slope = 0.0;  // log-log least squares of l1_gap against c
  double speed_bound = 0.0;
  double T = 0.0;
  std::size_t cells = 0;
};

struct ClassicalLimitSetup {
  double x_lo = -1.5;
  double x_hi = 1.5;
  double cfl = 0.45;
  StateBox box;
  double rho_min = 0.1;
};

/// L1 gap at time T between relativistic(c) and classical runs from the same
/// Riemann datum on one grid with one wave-speed bound, for each c.
ClassicalLimitResult classical_limit_experiment(const std::vector<double>& c_list,
                                                EulerState left, EulerState right, double T,
                                                std::size_t cells, double sigma,
                                                const ClassicalLimitSetup& setup = {});

}  // namespace fluxstab

#endif  // FLUXSTAB_EULER_HPP_
