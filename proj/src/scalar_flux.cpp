#include "fluxstab/scalar_flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fluxstab/errors.hpp"
#include "fluxstab/numerics.hpp"

namespace fluxstab {

namespace {

void check_interval(Interval k, const char* who) {
  if (!(k.lo < k.hi) || !std::isfinite(k.lo) || !std::isfinite(k.hi)) {
    throw std::invalid_argument(std::string(who) + ": domain must be a finite interval lo < hi");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

ScalarFlux::ScalarFlux(Definition def) : def_(std::move(def)) {
  if (!def_.f || !def_.df) throw std::invalid_argument("ScalarFlux: f and f' are required");
  check_interval(def_.domain, "ScalarFlux");
  if (def_.shape == FluxShape::Convex && !(def_.kappa > 0.0)) {
    throw std::invalid_argument("ScalarFlux: convex flux needs kappa > 0");
  }
  if (!(def_.lambda_hat >= 0.0)) throw std::invalid_argument("ScalarFlux: lambda_hat < 0");
}

double ScalarFlux::second_deriv(double u) const {
  if (!def_.d2f) throw std::logic_error("ScalarFlux '" + def_.name + "' has no f''");
  return def_.d2f(u);
}

bool ScalarFlux::in_domain(double u, double tol) const {
  const double slack = tol * std::max(1.0, def_.domain.length());
  return u >= def_.domain.lo - slack && u <= def_.domain.hi + slack;
}

void ScalarFlux::require_in_domain(double u) const {
  if (!in_domain(u)) {
    throw OutOfDomain("state " + fmt(u) + " outside K = [" + fmt(def_.domain.lo) + ", " +
                      fmt(def_.domain.hi) + "] of flux '" + def_.name + "'");
  }
}

double ScalarFlux::deriv_inverse(double s) const {
  if (!is_convex()) throw std::logic_error("deriv_inverse: flux is not uniformly convex");
  const Interval k = def_.domain;
  if (s <= def_.df(k.lo)) return k.lo;
  if (s >= def_.df(k.hi)) return k.hi;
  if (def_.df_inverse) return std::clamp(def_.df_inverse(s), k.lo, k.hi);
  return numerics::bisect_root([&](double u) { return def_.df(u) - s; }, k.lo, k.hi);
}

double ScalarFlux::legendre(double s) const {
  const double u = deriv_inverse(s);
  return s * u - def_.f(u);
}

ScalarFlux burgers(Interval domain) {
  check_interval(domain, "burgers");
  return ScalarFlux({.name = "burgers",
                     .f = [](double u) { return 0.5 * u * u; },
                     .df = [](double u) { return u; },
                     .d2f = [](double) { return 1.0; },
                     .df_inverse = [](double s) { return s; },
                     .domain = domain,
                     .kappa = 1.0,
                     .lambda_hat = std::max(std::abs(domain.lo), std::abs(domain.hi)),
                     .shape = FluxShape::Convex});
}

ScalarFlux scaled_burgers(double alpha, Interval domain) {
  check_interval(domain, "scaled_burgers");
  if (!(alpha > 0.0)) throw std::invalid_argument("scaled_burgers: alpha must be positive");
  return ScalarFlux({.name = "scaled_burgers " + fmt(alpha),
                     .f = [alpha](double u) { return 0.5 * alpha * u * u; },
                     .df = [alpha](double u) { return alpha * u; },
                     .d2f = [alpha](double) { return alpha; },
                     .df_inverse = [alpha](double s) { return s / alpha; },
                     .domain = domain,
                     .kappa = alpha,
                     .lambda_hat = alpha * std::max(std::abs(domain.lo), std::abs(domain.hi)),
                     .shape = FluxShape::Convex});
}

ScalarFlux shifted_burgers(double eps, Interval domain) {
  check_interval(domain, "shifted_burgers");
  return ScalarFlux({.name = "shifted_burgers " + fmt(eps),
                     .f = [eps](double u) { return 0.5 * u * u + eps * u; },
                     .df = [eps](double u) { return u + eps; },
                     .d2f = [](double) { return 1.0; },
                     .df_inverse = [eps](double s) { return s - eps; },
                     .domain = domain,
                     .kappa = 1.0,
                     .lambda_hat = std::max(std::abs(domain.lo + eps), std::abs(domain.hi + eps)),
                     .shape = FluxShape::Convex});
}

ScalarFlux linear_flux(double a, Interval domain) {
  check_interval(domain, "linear");
  return ScalarFlux({.name = "linear " + fmt(a),
                     .f = [a](double u) { return a * u; },
                     .df = [a](double) { return a; },
                     .d2f = [](double) { return 0.0; },
                     .df_inverse = {},
                     .domain = domain,
                     .kappa = 0.0,
                     .lambda_hat = std::abs(a),
                     .shape = FluxShape::Linear});
}

ScalarFlux convex_poly(double c2, double c3, double c4, Interval domain) {
  check_interval(domain, "convex_poly");
  auto d1 = [=](double u) { return 2.0 * c2 * u + 3.0 * c3 * u * u + 4.0 * c4 * u * u * u; };
  auto d2 = [=](double u) { return 2.0 * c2 + 6.0 * c3 * u + 12.0 * c4 * u * u; };

  // f'' is a quadratic: its minimum over K sits at an endpoint or the vertex.
  double kappa = std::min(d2(domain.lo), d2(domain.hi));
  if (c4 > 0.0) {
    const double vertex = -c3 / (4.0 * c4);
    if (domain.contains(vertex)) kappa = std::min(kappa, d2(vertex));
  }
  // |f'| peaks at an endpoint or where f'' vanishes.
  std::vector<double> candidates{domain.lo, domain.hi};
  if (c4 != 0.0) {
    const double disc = 36.0 * c3 * c3 - 96.0 * c2 * c4;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      candidates.push_back((-6.0 * c3 + r) / (24.0 * c4));
      candidates.push_back((-6.0 * c3 - r) / (24.0 * c4));
    }
  } else if (c3 != 0.0) {
    candidates.push_back(-c2 / (3.0 * c3));
  }
  double lambda_hat = 0.0;
  for (double u : candidates) {
    if (domain.contains(u)) lambda_hat = std::max(lambda_hat, std::abs(d1(u)));
  }
  const bool convex = kappa > 0.0;
  const bool linear = c2 == 0.0 && c3 == 0.0 && c4 == 0.0;
  return ScalarFlux({.name = "convex_poly " + fmt(c2) + " " + fmt(c3) + " " + fmt(c4),
                     .f = [=](double u) { return u * u * (c2 + u * (c3 + u * c4)); },
                     .df = d1,
                     .d2f = d2,
                     .df_inverse = {},
                     .domain = domain,
                     .kappa = convex ? kappa : 0.0,
                     .lambda_hat = lambda_hat,
                     .shape = convex ? FluxShape::Convex
                                     : (linear ? FluxShape::Linear : FluxShape::General)});
}

FluxCheck check_flux(const ScalarFlux& flux, double tol, int samples) {
  FluxCheck out;
  const Interval k = flux.domain();
  const double h = 1e-5 * k.length();
  double prev_slope = -std::numeric_limits<double>::infinity();
  double max_speed = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double u = k.lo + k.length() * static_cast<double>(i) / (samples - 1);
    const double slope = flux.deriv(u);
    max_speed = std::max(max_speed, std::abs(slope));
    if (u - h >= k.lo && u + h <= k.hi) {
      const double fd = (flux(u + h) - flux(u - h)) / (2.0 * h);
      if (std::abs(fd - slope) > tol * (1.0 + std::abs(slope))) {
        out.ok = false;
        out.message = "f' inconsistent with f at u=" + fmt(u);
        return out;
      }
    }
    if (flux.kappa() > 0.0 && !(slope > prev_slope)) {
      out.ok = false;
      out.message = "f' not strictly increasing at u=" + fmt(u);
      return out;
    }
    prev_slope = slope;
  }
  if (flux.lambda_hat() < max_speed * (1.0 - 1e-12)) {
    out.ok = false;
    out.message = "lambda_hat below sampled max |f'|";
  }
  return out;
}

PiecewiseLinearFlux::PiecewiseLinearFlux(std::vector<double> nodes, std::vector<double> values,
                                         std::string name)
    : nodes_(std::move(nodes)), values_(std::move(values)), name_(std::move(name)) {
  if (nodes_.size() < 2) throw std::invalid_argument("PiecewiseLinearFlux: need at least 2 nodes");
  if (nodes_.size() != values_.size()) {
    throw std::invalid_argument("PiecewiseLinearFlux: nodes/values length mismatch");
  }
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!(nodes_[i] < nodes_[i + 1])) {
      throw std::invalid_argument("PiecewiseLinearFlux: nodes must be strictly increasing");
    }
    lambda_hat_ = std::max(lambda_hat_, std::abs(slope(i)));
  }
}

PiecewiseLinearFlux PiecewiseLinearFlux::interpolate(const ScalarFlux& flux,
                                                     std::size_t num_nodes) {
  if (num_nodes < 2) throw std::invalid_argument("interpolate: need at least 2 nodes");
  const Interval k = flux.domain();
  std::vector<double> nodes(num_nodes);
  std::vector<double> values(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(num_nodes - 1);
    nodes[i] = i + 1 == num_nodes ? k.hi : k.lo + s * k.length();
    values[i] = flux(nodes[i]);
  }
  return PiecewiseLinearFlux(std::move(nodes), std::move(values),
                             flux.name() + " [pl " + std::to_string(num_nodes) + "]");
}

double PiecewiseLinearFlux::slope(std::size_t i) const {
  return (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]);
}

bool PiecewiseLinearFlux::in_domain(double u, double tol) const {
  const double slack = tol * std::max(1.0, nodes_.back() - nodes_.front());
  return u >= nodes_.front() - slack && u <= nodes_.back() + slack;
}

void PiecewiseLinearFlux::require_in_domain(double u) const {
  if (!in_domain(u)) {
    throw OutOfDomain("state " + fmt(u) + " outside node range of flux '" + name_ + "'");
  }
}

std::size_t PiecewiseLinearFlux::upper_node(double u) const {
  return static_cast<std::size_t>(std::upper_bound(nodes_.begin(), nodes_.end(), u) -
                                  nodes_.begin());
}

std::size_t PiecewiseLinearFlux::nearest_node(double u) const {
  const std::size_t j = upper_node(u);
  if (j == 0) return 0;
  if (j == nodes_.size()) return nodes_.size() - 1;
  return (u - nodes_[j - 1] <= nodes_[j] - u) ? j - 1 : j;
}

double PiecewiseLinearFlux::operator()(double u) const {
  require_in_domain(u);
  std::size_t j = upper_node(u);
  if (j == 0) j = 1;
  if (j == nodes_.size()) j = nodes_.size() - 1;
  if (u == nodes_[j - 1]) return values_[j - 1];
  return values_[j - 1] + slope(j - 1) * (u - nodes_[j - 1]);
}

Interval domain_of(const AnyFlux& flux) {
  return std::visit([](const auto& f) { return f.domain(); }, flux);
}

double lambda_hat_of(const AnyFlux& flux) {
  return std::visit([](const auto& f) { return f.lambda_hat(); }, flux);
}

double eval_flux(const AnyFlux& flux, double u) {
  return std::visit([u](const auto& f) { return f(u); }, flux);
}

std::string name_of(const AnyFlux& flux) {
  return std::visit([](const auto& f) { return f.name(); }, flux);
}

}  // namespace fluxstab
