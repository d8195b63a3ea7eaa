#include "fluxstab/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace fluxstab::numerics {

namespace {

double simpson_step(const RealFn& fn, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = fn(lm);
  const double frm = fn(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(fn, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(fn, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const RealFn& fn, double a, double b, double rel_tol,
                        double abs_floor, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = fn(a);
  const double fb = fn(b);
  const double fm = fn(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // A coarse midpoint pass sets the scale for the relative target.
  const double coarse = composite_midpoint(fn, a, b, 8);
  const double tol = std::max(abs_floor, rel_tol * std::max(std::abs(whole), std::abs(coarse)));
  return simpson_step(fn, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double composite_midpoint(const RealFn& fn, double a, double b, long panels) {
  if (panels <= 0) throw std::invalid_argument("composite_midpoint: panels must be positive");
  const double h = (b - a) / static_cast<double>(panels);
  double s = 0.0;
  for (long i = 0; i < panels; ++i) s += fn(a + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

RefinedIntegral refine_midpoint(const RealFn& fn, double a, double b, long min_panels,
                                long max_panels, double rel_tol) {
  RefinedIntegral out;
  out.panels = min_panels;
  out.value = composite_midpoint(fn, a, b, out.panels);
  while (out.panels * 2 <= max_panels) {
    const double next = composite_midpoint(fn, a, b, out.panels * 2);
    const double diff = std::abs(next - out.value);
    out.value = next;
    out.panels *= 2;
    if (diff <= rel_tol * std::abs(next) || diff <= 1e-15) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double golden_minimize(const RealFn& fn, double a, double b, double x_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > x_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
    if (c >= d) break;
  }
  return 0.5 * (a + b);
}

double bisect_root(const RealFn& fn, double a, double b, double x_tol, int max_iter) {
  double fa = fn(a);
  const double fb = fn(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) throw std::invalid_argument("bisect_root: no sign change");
  for (int it = 0; it < max_iter && b - a > x_tol; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = fn(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two paired points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("loglog_slope: values must be positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fluxstab::numerics
