#ifndef FLUXSTAB_FLUX_METRICS_HPP_
#define FLUXSTAB_FLUX_METRICS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fluxstab/front_tracking.hpp"
#include "fluxstab/riemann.hpp"

namespace fluxstab {

struct PgeneralCheck {
  double lhs = 0.0;  // sampled flux distance
  double rhs = 0.0;  // max sampled |f' - g'|
  bool holds = false;
};

/// Sampled flux distance against the sampled derivative gap; holds when
/// lhs >= ratio * rhs.
PgeneralCheck check_pgeneral(const ScalarFlux& f, const ScalarFlux& g,
                             const std::vector<double>& u_samples,
                             const RiemannSampler& sampler = {}, double ratio = 0.95);

/// `count` equally spaced points of the shared domain.
std::vector<double> uniform_samples(Interval k, int count);

struct TmainEntry {
  std::string datum;
  double T = 0.0;
  double lhs = 0.0;          // ||S^f_T u0 - S^g_T u0||_1
  double hat_d = 0.0;        // sampled flux distance
  double tv_integral = 0.0;  // int_0^T TV(S^g_t u0) dt
  double lipschitz = 1.0;
  double rhs = 0.0;
  bool holds = false;

  friend bool operator==(const TmainEntry&, const TmainEntry&) = default;
};

/// One stability check: lhs <= L * hat_d * int TV(S^g u) dt. The flux
/// distance may be supplied to avoid recomputing it.
TmainEntry check_tmain(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                       const PiecewiseConstant& u0, double T, double lipschitz = 1.0,
                       std::optional<double> hat_d = std::nullopt, double tol = 1e-9);

struct LerrestResult {
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t steps = 0;
  bool holds = false;
};

/// Error functional along the S^g trajectory of u0 stored every T/steps:
/// lhs = ||w(T) - S^f_T w(0)||, rhs = L sum_k ||S^f_h w(kh) - w((k+1)h)||.
/// Flags lhs <= (1 + slack) rhs, with an absolute floor for the zero case.
LerrestResult lerrest_diagnostic(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                                 const PiecewiseConstant& u0, double T, std::size_t steps = 256,
                                 double lipschitz = 1.0, double slack = 0.1);

/// sup over `samples` points of |f'(u) - g'(u)|; one-sided slopes for
/// piecewise-linear fluxes (the segment containing u, right one at a node).
double derivative_gap(const AnyFlux& f, const AnyFlux& g, int samples = 4096);

struct StabilityReport {
  std::string flux_f;
  std::string flux_g;
  double hat_d_estimate = 0.0;
  double sup_hatd_lin_on_derivatives = 0.0;
  double c0_derivative_gap = 0.0;
  std::vector<TmainEntry> semigroup_gaps;
  bool pgeneral_holds = false;
  bool tmain_holds = false;
  double lipschitz = 1.0;  // L_f for scalar laws: L1 contraction

  friend bool operator==(const StabilityReport&, const StabilityReport&) = default;
};

struct NamedDatum {
  std::string id;
  PiecewiseConstant u0;
};

/// Runs the flux-distance, derivative-gap and semigroup checks for one pair.
StabilityReport build_stability_report(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                                       const std::vector<NamedDatum>& data,
                                       const std::vector<double>& times,
                                       const RiemannSampler& sampler = {});

void write_report_csv(std::ostream& os, const StabilityReport& r);
StabilityReport read_report_csv(std::istream& is);
/// Human-readable block.
std::string summarize(const StabilityReport& r);

}  // namespace fluxstab

#endif  // FLUXSTAB_FLUX_METRICS_HPP_
