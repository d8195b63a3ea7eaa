#ifndef FLUXSTAB_NUMERICS_HPP_
#define FLUXSTAB_NUMERICS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace fluxstab::numerics {

using RealFn = std::function<double(double)>;

/// Adaptive Simpson on [a, b]. Stops a panel when its Richardson error is
/// below max(abs_floor, rel_tol * |whole-interval estimate|).
double adaptive_simpson(const RealFn& fn, double a, double b, double rel_tol = 1e-8,
                        double abs_floor = 1e-12, int max_depth = 48);

/// Composite midpoint rule with `panels` equal panels.
double composite_midpoint(const RealFn& fn, double a, double b, long panels);

struct RefinedIntegral {
  double value = 0.0;
  long panels = 0;
  bool converged = false;
};

/// Doubles the midpoint panel count from `min_panels` until two successive
/// results agree to `rel_tol` (or `max_panels` is reached).
RefinedIntegral refine_midpoint(const RealFn& fn, double a, double b, long min_panels,
                                long max_panels = 1L << 22, double rel_tol = 1e-6);

/// Golden-section search for a minimum of a unimodal function on [a, b].
/// Returns the abscissa.
double golden_minimize(const RealFn& fn, double a, double b, double x_tol = 1e-12);

/// Root of a continuous function bracketed by [a, b] (sign change required).
double bisect_root(const RealFn& fn, double a, double b, double x_tol = 1e-15,
                   int max_iter = 200);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace fluxstab::numerics

#endif  // FLUXSTAB_NUMERICS_HPP_
