#include "fluxstab/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fluxstab/errors.hpp"
#include "fluxstab/numerics.hpp"

namespace fluxstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_setup(double sigma, const StateBox& box, double rho_min) {
  if (!(sigma > 0.0)) throw std::invalid_argument("SystemFlux: sigma must be positive");
  if (!(rho_min > 0.0)) throw std::invalid_argument("SystemFlux: rho_min must be positive");
  if (!(box.rho_lo < box.rho_hi) || !(box.q_lo < box.q_hi) || box.rho_lo < rho_min) {
    throw std::invalid_argument("SystemFlux: state box must be nonempty and above rho_min");
  }
}

void require_rho(double rho, double rho_min) {
  if (!(rho >= rho_min)) {
    throw OutOfDomain("density " + std::to_string(rho) + " below rho_min " +
                      std::to_string(rho_min));
  }
}

// Largest |eigenvalue| (real part) of a 2x2 matrix.
double spectral_radius_2x2(const Matrix& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double disc = tr * tr - 4.0 * det;
  if (disc < 0.0) return std::abs(0.5 * tr);
  const double r = std::sqrt(disc);
  return std::max(std::abs(0.5 * (tr + r)), std::abs(0.5 * (tr - r)));
}

}  // namespace

double recover_velocity(double rho, double q, double c, double sigma, double rho_min) {
  require_rho(rho, rho_min);
  if (!(c > 0.0)) throw std::invalid_argument("recover_velocity: c must be positive");
  const double b = rho * (1.0 + sigma * sigma / (c * c));
  // Root of the quadratic written without the b - sqrt(...) cancellation.
  return 2.0 * q / (b + std::sqrt(b * b + 4.0 * q * q / (c * c)));
}

double phi_c(double rho, double q, double c, double sigma, double rho_min) {
  const double v = recover_velocity(rho, q, c, sigma, rho_min);
  const double p = sigma * sigma * rho;
  const double c2 = c * c;
  const double beta2 = v * v / c2;
  return 1.0 + (1.0 / c2) * (1.0 - beta2) * p / (rho + beta2 * (p / c2));
}

SystemFlux SystemFlux::classical(double sigma, StateBox box, double rho_min) {
  check_setup(sigma, box, rho_min);
  SystemFlux f;
  f.kind_ = SystemKind::Classical;
  f.sigma_ = sigma;
  f.c_ = kInf;
  f.box_ = box;
  f.rho_min_ = rho_min;
  const double qmax = std::max(std::abs(box.q_lo), std::abs(box.q_hi));
  f.lambda_hat_ = 1.1 * std::max(qmax / box.rho_lo + sigma, f.sampled_speed_bound());
  return f;
}

SystemFlux SystemFlux::relativistic(double sigma, double c, StateBox box, double rho_min) {
  check_setup(sigma, box, rho_min);
  if (!(c > sigma)) throw std::invalid_argument("SystemFlux: need c > sigma");
  SystemFlux f;
  f.kind_ = SystemKind::Relativistic;
  f.sigma_ = sigma;
  f.c_ = c;
  f.box_ = box;
  f.rho_min_ = rho_min;
  const double qmax = std::max(std::abs(box.q_lo), std::abs(box.q_hi));
  f.lambda_hat_ = 1.1 * std::max(qmax / box.rho_lo + sigma, f.sampled_speed_bound());
  return f;
}

double SystemFlux::sampled_speed_bound() const {
  constexpr int kGrid = 64;
  double best = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const EulerState s{box_.rho_lo + (box_.rho_hi - box_.rho_lo) * i / (kGrid - 1),
                         box_.q_lo + (box_.q_hi - box_.q_lo) * j / (kGrid - 1)};
      best = std::max(best, spectral_radius_2x2(jacobian(s)));
    }
  }
  return best;
}

void SystemFlux::require_admissible(const EulerState& s) const {
  require_rho(s.rho, rho_min_);
  if (!std::isfinite(s.q)) throw OutOfDomain("non-finite momentum");
}

double SystemFlux::velocity(const EulerState& s) const {
  if (kind_ == SystemKind::Classical) {
    require_admissible(s);
    return s.q / s.rho;
  }
  return recover_velocity(s.rho, s.q, c_, sigma_, rho_min_);
}

double SystemFlux::phi(const EulerState& s) const {
  if (kind_ == SystemKind::Classical) return 1.0;
  return phi_c(s.rho, s.q, c_, sigma_, rho_min_);
}

std::array<double, 2> SystemFlux::operator()(const EulerState& s) const {
  require_admissible(s);
  const double convective = s.q * s.q / s.rho;
  const double pressure = sigma_ * sigma_ * s.rho;
  if (kind_ == SystemKind::Classical) return {s.q, convective + pressure};
  return {s.q, phi(s) * convective + pressure};
}

Matrix SystemFlux::jacobian(const EulerState& s) const {
  if (kind_ == SystemKind::Classical) {
    const double u = s.q / s.rho;
    return Matrix{{0.0, 1.0}, {sigma_ * sigma_ - u * u, 2.0 * u}};
  }
  return numerical_jacobian([this](const EulerState& z) { return (*this)(z); }, s);
}

Matrix numerical_jacobian(const std::function<std::array<double, 2>(const EulerState&)>& f,
                          const EulerState& s, double h_scale) {
  Matrix j(2);
  for (int k = 0; k < 2; ++k) {
    const double base = k == 0 ? s.rho : s.q;
    const double h = h_scale * std::max(1.0, std::abs(base));
    auto central = [&](double step) {
      EulerState lo = s, hi = s;
      (k == 0 ? lo.rho : lo.q) -= step;
      (k == 0 ? hi.rho : hi.q) += step;
      const auto fl = f(lo);
      const auto fh = f(hi);
      return std::array<double, 2>{(fh[0] - fl[0]) / (2 * step), (fh[1] - fl[1]) / (2 * step)};
    };
    const auto d1 = central(h);
    const auto d2 = central(0.5 * h);
    for (int r = 0; r < 2; ++r) j(r, k) = (4.0 * d2[r] - d1[r]) / 3.0;
  }
  return j;
}

double jacobian_gap(const SystemFlux& relativistic, const SystemFlux& classical, int grid) {
  if (relativistic.sigma() != classical.sigma()) {
    throw std::invalid_argument("jacobian_gap: fluxes must share sigma");
  }
  const StateBox& b = classical.box();
  // Differentiating f_c - f directly keeps rounding proportional to the
  // (small) gap instead of to the fluxes themselves.
  const auto diff = [&](const EulerState& s) {
    const auto a = relativistic(s);
    const auto c = classical(s);
    return std::array<double, 2>{a[0] - c[0], a[1] - c[1]};
  };
  const int n = std::max(2, grid);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const EulerState s{b.rho_lo + (b.rho_hi - b.rho_lo) * i / (n - 1),
                         b.q_lo + (b.q_hi - b.q_lo) * k / (n - 1)};
      best = std::max(best, operator_norm(numerical_jacobian(diff, s)));
    }
  }
  return best;
}

std::array<double, 2> GridSolution::totals() const {
  std::array<double, 2> s{0.0, 0.0};
  for (const auto& c : cells) {
    s[0] += c.rho * dx;
    s[1] += c.q * dx;
  }
  return s;
}

GridSolution riemann_grid(double x_lo, double x_hi, std::size_t cells, EulerState left,
                          EulerState right, double x0) {
  if (!(x_hi > x_lo) || cells == 0) throw std::invalid_argument("riemann_grid: bad grid");
  GridSolution g;
  g.x_lo = x_lo;
  g.dx = (x_hi - x_lo) / static_cast<double>(cells);
  g.cells.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = x_lo + g.dx * static_cast<double>(i);
    // Cell straddling the jump gets the exact average.
    const double wl = std::clamp((x0 - a) / g.dx, 0.0, 1.0);
    g.cells[i] = {wl * left.rho + (1 - wl) * right.rho, wl * left.q + (1 - wl) * right.q};
  }
  return g;
}

double grid_l1_distance(const GridSolution& a, const GridSolution& b) {
  if (a.cells.size() != b.cells.size() || a.dx != b.dx || a.x_lo != b.x_lo) {
    throw std::invalid_argument("grid_l1_distance: grids differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    s += std::hypot(a.cells[i].rho - b.cells[i].rho, a.cells[i].q - b.cells[i].q);
  }
  return s * a.dx;
}

FvRun fv_evolve(const SystemFlux& flux, const GridSolution& u0, double T, FvOptions opt) {
  if (!(T >= 0.0)) throw std::invalid_argument("fv_evolve: T must be nonnegative");
  if (!(opt.cfl > 0.0 && opt.cfl < 1.0)) throw std::invalid_argument("fv_evolve: cfl in (0,1)");
  if (u0.cells.empty() || !(u0.dx > 0.0)) throw std::invalid_argument("fv_evolve: empty grid");
  const double smax = opt.speed_bound.value_or(flux.lambda_hat());
  if (!(smax > 0.0)) throw std::invalid_argument("fv_evolve: speed bound must be positive");

  FvRun run;
  run.solution = u0;
  auto& u = run.solution.cells;
  const std::size_t n = u.size();
  const double dx = u0.dx;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(u[i].rho >= flux.rho_min())) {
      throw NumericalAbort("fv_evolve: initial density below rho_min in cell " +
                           std::to_string(i));
    }
  }
  const auto start = run.solution.totals();
  run.min_rho = kInf;
  for (const auto& c : u) run.min_rho = std::min(run.min_rho, c.rho);

  std::vector<std::array<double, 2>> f(n);
  std::vector<std::array<double, 2>> interface(n + 1);
  double boundary_mass = 0.0;
  double boundary_momentum = 0.0;
  double t = u0.t;
  const double t_end = u0.t + T;
  const double dt_max = opt.cfl * dx / smax;
  while (t < t_end) {
    const double dt = std::min(dt_max, t_end - t);
    for (std::size_t i = 0; i < n; ++i) f[i] = flux(u[i]);
    // HLL with S_L = -smax, S_R = +smax; outflow ghosts copy the edge cells,
    // so the boundary fluxes reduce to the edge-cell fluxes.
    interface[0] = f[0];
    interface[n] = f[n - 1];
    for (std::size_t i = 1; i < n; ++i) {
      const auto& l = u[i - 1];
      const auto& r = u[i];
      interface[i] = {0.5 * (f[i - 1][0] + f[i][0]) - 0.5 * smax * (r.rho - l.rho),
                      0.5 * (f[i - 1][1] + f[i][1]) - 0.5 * smax * (r.q - l.q)};
    }
    const double k = dt / dx;
    for (std::size_t i = 0; i < n; ++i) {
      u[i].rho -= k * (interface[i + 1][0] - interface[i][0]);
      u[i].q -= k * (interface[i + 1][1] - interface[i][1]);
      if (!(u[i].rho >= flux.rho_min())) {
        throw NumericalAbort("fv_evolve: density " + std::to_string(u[i].rho) +
                             " below rho_min in cell " + std::to_string(i) + " at t=" +
                             std::to_string(t + dt));
      }
      run.min_rho = std::min(run.min_rho, u[i].rho);
    }
    boundary_mass += dt * (interface[n][0] - interface[0][0]);
    boundary_momentum += dt * (interface[n][1] - interface[0][1]);
    t = (dt == t_end - t) ? t_end : t + dt;
    ++run.steps;
  }
  run.solution.t = t_end;
  const auto end = run.solution.totals();
  run.mass_residual = end[0] - start[0] + boundary_mass;
  run.momentum_residual = end[1] - start[1] + boundary_momentum;
  return run;
}

ClassicalLimitResult classical_limit_experiment(const std::vector<double>& c_list,
                                                EulerState left, EulerState right, double T,
                                                std::size_t cells, double sigma,
                                                const ClassicalLimitSetup& setup) {
  if (c_list.size() < 2) throw std::invalid_argument("classical_limit_experiment: need >= 2 c values");
  const SystemFlux classical = SystemFlux::classical(sigma, setup.box, setup.rho_min);
  std::vector<SystemFlux> rel;
  double smax = classical.lambda_hat();
  for (double c : c_list) {
    rel.push_back(SystemFlux::relativistic(sigma, c, setup.box, setup.rho_min));
    smax = std::max(smax, rel.back().lambda_hat());
  }
  // One grid and one wave-speed bound for every run, so the scheme's own
  // diffusion is common to all of them.
  const FvOptions opt{setup.cfl, smax};
  const GridSolution u0 = riemann_grid(setup.x_lo, setup.x_hi, cells, left, right);
  const FvRun base = fv_evolve(classical, u0, T, opt);

  ClassicalLimitResult out;
  out.speed_bound = smax;
  out.T = T;
  out.cells = cells;
  std::vector<double> cs, gaps;
  for (std::size_t k = 0; k < c_list.size(); ++k) {
    const FvRun r = fv_evolve(rel[k], u0, T, opt);
    const double gap = grid_l1_distance(r.solution, base.solution);
    out.rows.push_back({c_list[k], gap, r.mass_residual, r.momentum_residual});
    cs.push_back(c_list[k]);
    gaps.push_back(gap);
  }
  bool positive = true;
  for (double g : gaps) positive = positive && g > 0.0;
  out.slope = positive ? numerics::loglog_slope(cs, gaps) : std::nan("");
  return out;
}

}  // namespace fluxstab
