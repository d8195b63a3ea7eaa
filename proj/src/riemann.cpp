#include "fluxstab/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fluxstab/numerics.hpp"

namespace fluxstab {

namespace {

struct Point {
  double u;
  double f;
};

// Twice the signed area of (o, a, b); positive for a counter-clockwise turn.
// Values within rounding of zero are reported as exactly collinear.
double turn(const Point& o, const Point& a, const Point& b) {
  const double t1 = (a.u - o.u) * (b.f - o.f);
  const double t2 = (a.f - o.f) * (b.u - o.u);
  const double c = t1 - t2;
  return std::abs(c) <= 1e-12 * (std::abs(t1) + std::abs(t2)) ? 0.0 : c;
}

double chord(const Point& a, const Point& b) { return (b.f - a.f) / (b.u - a.u); }

bool inside_rarefaction(const RiemannFan& fan, double xi) {
  for (const auto& w : fan.waves) {
    if (const auto* r = std::get_if<Rarefaction>(&w)) {
      if (r->speed_lo < xi && xi < r->speed_hi) return true;
    }
  }
  return false;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double RiemannFan::at_speed(double xi) const {
  double u = left;
  for (const auto& w : waves) {
    if (const auto* s = std::get_if<Shock>(&w)) {
      if (xi <= s->speed) return u;
      u = s->right;
    } else {
      const auto& r = std::get<Rarefaction>(w);
      if (xi < r.speed_lo) return u;
      if (xi <= r.speed_hi) return r.state_at(xi);
      u = r.right;
    }
  }
  return u;
}

std::vector<double> RiemannFan::breakpoints() const {
  std::vector<double> out;
  for (const auto& w : waves) {
    if (const auto* s = std::get_if<Shock>(&w)) {
      out.push_back(s->speed);
    } else {
      const auto& r = std::get<Rarefaction>(w);
      out.push_back(r.speed_lo);
      out.push_back(r.speed_hi);
    }
  }
  return out;
}

RiemannFan solve_riemann(const ScalarFlux& flux, double u_left, double u_right) {
  flux.require_in_domain(u_left);
  flux.require_in_domain(u_right);
  RiemannFan fan{u_left, u_right, {}};
  if (u_left == u_right) return fan;
  switch (flux.shape()) {
    case FluxShape::Linear:
      fan.waves.emplace_back(Shock{flux.deriv(u_left), u_left, u_right});
      return fan;
    case FluxShape::General:
      throw std::invalid_argument("solve_riemann: flux '" + flux.name() +
                                  "' is not convex; use a piecewise-linear approximation");
    case FluxShape::Convex:
      break;
  }
  if (u_left < u_right) {
    fan.waves.emplace_back(Rarefaction{flux.deriv(u_left), flux.deriv(u_right), u_left,
                                       u_right, [flux, u_left, u_right](double xi) {
                                         return std::clamp(flux.deriv_inverse(xi), u_left,
                                                           u_right);
                                       }});
  } else {
    const double speed = (flux(u_right) - flux(u_left)) / (u_right - u_left);
    fan.waves.emplace_back(Shock{speed, u_left, u_right});
  }
  return fan;
}

RiemannFan solve_riemann(const PiecewiseLinearFlux& flux, double u_left, double u_right) {
  flux.require_in_domain(u_left);
  flux.require_in_domain(u_right);
  RiemannFan fan{u_left, u_right, {}};
  if (u_left == u_right) return fan;

  const double lo = std::min(u_left, u_right);
  const double hi = std::max(u_left, u_right);
  std::vector<Point> pts;
  pts.push_back({lo, flux(lo)});
  const auto& nodes = flux.nodes();
  for (std::size_t i = flux.upper_node(lo); i < nodes.size() && nodes[i] < hi; ++i) {
    pts.push_back({nodes[i], flux.values()[i]});
  }
  pts.push_back({hi, flux(hi)});

  // Monotone chain: lower convex envelope for increasing data, upper concave
  // envelope for decreasing data. Collinear points are dropped, so each
  // envelope segment becomes exactly one wave.
  const bool increasing = u_left < u_right;
  std::vector<Point> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const double c = turn(hull[hull.size() - 2], hull.back(), p);
      if (increasing ? c <= 0.0 : c >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  if (!increasing) std::reverse(hull.begin(), hull.end());
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    fan.waves.emplace_back(Shock{chord(hull[i], hull[i + 1]), hull[i].u, hull[i + 1].u});
  }
  return fan;
}

RiemannFan solve_riemann(const AnyFlux& flux, double u_left, double u_right) {
  return std::visit([&](const auto& f) { return solve_riemann(f, u_left, u_right); }, flux);
}

double eval_fan(const RiemannFan& fan, double t, double x) {
  if (!(t > 0.0)) throw std::invalid_argument("eval_fan: t must be positive");
  return fan.at_speed(x / t);
}

FanCheck check_fan(const AnyFlux& flux, const RiemannFan& fan, double tol) {
  FanCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.message = std::move(msg);
    return out;
  };
  const auto* smooth = std::get_if<ScalarFlux>(&flux);
  double prev_speed = -std::numeric_limits<double>::infinity();
  double state = fan.left;
  for (std::size_t i = 0; i < fan.waves.size(); ++i) {
    const auto& w = fan.waves[i];
    if (const auto* s = std::get_if<Shock>(&w)) {
      if (s->left != state) return fail("wave " + std::to_string(i) + " does not chain");
      if (s->speed < prev_speed - tol) return fail("wave speeds decrease at " + std::to_string(i));
      const double rh = eval_flux(flux, s->right) - eval_flux(flux, s->left) -
                        s->speed * (s->right - s->left);
      if (std::abs(rh) > tol) return fail("Rankine-Hugoniot residual " + num(rh));
      if (smooth != nullptr && smooth->shape() != FluxShape::Linear) {
        if (smooth->deriv(s->left) < s->speed - tol || s->speed < smooth->deriv(s->right) - tol) {
          return fail("shock " + std::to_string(i) + " violates the Lax inequalities");
        }
      }
      prev_speed = s->speed;
      state = s->right;
    } else {
      const auto& r = std::get<Rarefaction>(w);
      if (r.left != state) return fail("wave " + std::to_string(i) + " does not chain");
      if (r.speed_lo < prev_speed - tol || r.speed_hi < r.speed_lo) {
        return fail("wave speeds decrease at " + std::to_string(i));
      }
      if (smooth == nullptr) return fail("rarefaction in a piecewise-linear fan");
      for (int k = 0; k <= 8; ++k) {
        const double xi = r.speed_lo + (r.speed_hi - r.speed_lo) * k / 8.0;
        const double res = smooth->deriv(r.state_at(xi)) - xi;
        if (std::abs(res) > tol) return fail("rarefaction map residual " + num(res));
      }
      prev_speed = r.speed_hi;
      state = r.right;
    }
  }
  if (state != fan.right) return fail("last wave does not end at the right state");
  return out;
}

double fan_l1_diff(const RiemannFan& a, const RiemannFan& b, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("fan_l1_diff: t must be positive");
  if (a.left != b.left || a.right != b.right) {
    throw std::invalid_argument("fan_l1_diff: fans must share their outer states");
  }
  std::vector<double> br = merge_breakpoints(
      [&] { auto v = a.breakpoints(); std::sort(v.begin(), v.end()); return v; }(),
      [&] { auto v = b.breakpoints(); std::sort(v.begin(), v.end()); return v; }());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double p = br[i];
    const double q = br[i + 1];
    if (!(q > p)) continue;
    const double mid = 0.5 * (p + q);
    if (!inside_rarefaction(a, mid) && !inside_rarefaction(b, mid)) {
      total += std::abs(a.at_speed(mid) - b.at_speed(mid)) * (q - p);
    } else {
      total += numerics::adaptive_simpson(
          [&](double xi) { return std::abs(a.at_speed(xi) - b.at_speed(xi)); }, p, q, 1e-8,
          1e-12);
    }
  }
  return t * total;
}

double riemann_l1_diff(const AnyFlux& f, const AnyFlux& g, double u_left, double u_right,
                       double t) {
  const RiemannFan ff = solve_riemann(f, u_left, u_right);
  const RiemannFan gg = solve_riemann(g, u_left, u_right);
  return fan_l1_diff(ff, gg, t);
}

std::vector<std::pair<double, double>> sampler_pairs(Interval domain,
                                                     const RiemannSampler& sampler) {
  std::vector<std::pair<double, double>> out;
  if (sampler.grid >= 2) {
    const double h = domain.length() / (sampler.grid - 1);
    auto node = [&](int i) { return i + 1 == sampler.grid ? domain.hi : domain.lo + i * h; };
    for (int i = 0; i < sampler.grid; ++i) {
      for (int j = 0; j < sampler.grid; ++j) {
        if (i != j) out.emplace_back(node(i), node(j));
      }
    }
  }
  if (sampler.near_diagonal >= 1 && sampler.gap > 0.0 && sampler.gap < domain.length()) {
    const double span = domain.length() - sampler.gap;
    const int n = sampler.near_diagonal;
    for (int k = 0; k < n; ++k) {
      const double u = n == 1 ? domain.lo : domain.lo + span * k / (n - 1);
      const double v = std::min(u + sampler.gap, domain.hi);
      out.emplace_back(u, v);
      out.emplace_back(v, u);
    }
  }
  return out;
}

FluxDistanceReport hat_d_estimate(const AnyFlux& f, const AnyFlux& g,
                                  const RiemannSampler& sampler) {
  const Interval kf = domain_of(f);
  const Interval kg = domain_of(g);
  const Interval k{std::max(kf.lo, kg.lo), std::min(kf.hi, kg.hi)};
  if (!(k.lo < k.hi)) throw std::invalid_argument("hat_d_estimate: fluxes share no states");
  FluxDistanceReport rep;
  bool first = true;
  for (const auto& [ul, ur] : sampler_pairs(k, sampler)) {
    if (ul == ur) continue;
    const double v = riemann_l1_diff(f, g, ul, ur, 1.0) / std::abs(ur - ul);
    ++rep.samples;
    if (first || v > rep.estimate) {
      rep.estimate = v;
      rep.argmax_left = ul;
      rep.argmax_right = ur;
      first = false;
    }
  }
  return rep;
}

}  // namespace fluxstab
