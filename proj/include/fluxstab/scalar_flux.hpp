#ifndef FLUXSTAB_SCALAR_FLUX_HPP_
#define FLUXSTAB_SCALAR_FLUX_HPP_

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fluxstab/pwfun.hpp"

namespace fluxstab {

enum class FluxShape {
  Linear,   // f'' == 0: every jump is a contact discontinuity
  Convex,   // f'' >= kappa > 0 on K
  General,  // anything else; only usable through a piecewise-linear approximation
};

/// Smooth scalar flux on a compact state interval K, with certified bounds
/// kappa <= min f'' and lambda_hat >= max |f'| over K.
class ScalarFlux {
 public:
  using Fn = std::function<double(double)>;

  struct Definition {
    std::string name;
    Fn f;
    Fn df;
    Fn d2f;             // optional
    Fn df_inverse;      // optional closed form of (f')^{-1}
    Interval domain;
    double kappa = 0.0;
    double lambda_hat = 0.0;
    FluxShape shape = FluxShape::General;
  };

  explicit ScalarFlux(Definition def);

  double operator()(double u) const { return def_.f(u); }
  double deriv(double u) const { return def_.df(u); }
  /// Throws std::logic_error when no second derivative was supplied.
  double second_deriv(double u) const;
  bool has_second_deriv() const { return static_cast<bool>(def_.d2f); }

  const std::string& name() const { return def_.name; }
  Interval domain() const { return def_.domain; }
  double kappa() const { return def_.kappa; }
  double lambda_hat() const { return def_.lambda_hat; }
  FluxShape shape() const { return def_.shape; }
  bool is_convex() const { return def_.shape == FluxShape::Convex; }

  bool in_domain(double u, double tol = 1e-12) const;
  /// Throws OutOfDomain when u is not in K.
  void require_in_domain(double u) const;

  /// The u in K with f'(u) = s, clamped to K. Requires a convex flux.
  double deriv_inverse(double s) const;

  /// Legendre transform f*(s) = max_{u in K} (s u - f(u)). Requires a convex flux.
  double legendre(double s) const;

 private:
  Definition def_;
};

/// f(u) = u^2 / 2.
ScalarFlux burgers(Interval domain);
/// f(u) = alpha u^2 / 2, alpha > 0.
ScalarFlux scaled_burgers(double alpha, Interval domain);
/// f(u) = u^2 / 2 + eps u.
ScalarFlux shifted_burgers(double eps, Interval domain);
/// f(u) = a u.
ScalarFlux linear_flux(double a, Interval domain);
/// f(u) = c2 u^2 + c3 u^3 + c4 u^4. Convex when the certified kappa is positive.
ScalarFlux convex_poly(double c2, double c3, double c4, Interval domain);

struct FluxCheck {
  bool ok = true;
  std::string message;
};

/// Sampled consistency checks: f' against central differences of f,
/// monotone f' when kappa > 0, lambda_hat against sampled |f'|.
FluxCheck check_flux(const ScalarFlux& flux, double tol = 1e-6, int samples = 257);

/// Continuous piecewise-linear flux through (nodes[i], values[i]).
class PiecewiseLinearFlux {
 public:
  PiecewiseLinearFlux(std::vector<double> nodes, std::vector<double> values,
                      std::string name = "pl");

  /// Interpolates `flux` on `num_nodes` equally spaced nodes spanning its K.
  static PiecewiseLinearFlux interpolate(const ScalarFlux& flux, std::size_t num_nodes);

  double operator()(double u) const;
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& name() const { return name_; }
  Interval domain() const { return {nodes_.front(), nodes_.back()}; }
  /// max |slope| over all segments.
  double lambda_hat() const { return lambda_hat_; }
  /// Slope of segment i, between nodes i and i+1.
  double slope(std::size_t i) const;

  bool in_domain(double u, double tol = 1e-12) const;
  void require_in_domain(double u) const;
  /// Index of the nearest node.
  std::size_t nearest_node(double u) const;
  double project(double u) const { return nodes_[nearest_node(u)]; }
  /// First node index strictly greater than u.
  std::size_t upper_node(double u) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::string name_;
  double lambda_hat_ = 0.0;
};

using AnyFlux = std::variant<ScalarFlux, PiecewiseLinearFlux>;

Interval domain_of(const AnyFlux& flux);
double lambda_hat_of(const AnyFlux& flux);
double eval_flux(const AnyFlux& flux, double u);
std::string name_of(const AnyFlux& flux);

}  // namespace fluxstab

#endif  // FLUXSTAB_SCALAR_FLUX_HPP_
