#ifndef FLUXSTAB_LAX_OLEINIK_HPP_
#define FLUXSTAB_LAX_OLEINIK_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fluxstab/pwfun.hpp"
#include "fluxstab/scalar_flux.hpp"

namespace fluxstab {

/// Bounded initial datum with an exact primitive U(y) = int_0^y u0.
///
/// Step data (finite or periodic) also expose their breakpoints, which lets
/// the evaluator minimise exactly segment by segment.
class InitialData {
 public:
  /// Finitely many jumps.
  static InitialData steps(PiecewiseConstant u0);

  /// `high` on [k*period + offset, k*period + offset + high_width], `low` elsewhere.
  static InitialData periodic_step(double period, double high_width, double high, double low,
                                   double offset = 0.0);

  /// The sawtooth u_{0,n}: +1 on [k 2^{1-n}, k 2^{1-n} + 2^{-n}], -1 otherwise.
  static InitialData sawtooth(int n);

  /// General datum given by closed forms; evaluated with a grid scan.
  static InitialData general(std::function<double(double)> value,
                             std::function<double(double)> primitive, Interval range,
                             std::string name = "general");

  double operator()(double x) const;
  double primitive(double y) const;
  /// Breakpoints strictly inside (a, b), ascending. Empty for general data.
  std::vector<double> breakpoints_in(double a, double b) const;
  bool has_breakpoints() const { return kind_ != Kind::General; }
  /// [min u0, max u0].
  Interval range() const { return range_; }
  const std::string& name() const { return name_; }
  /// The step function itself, for finite step data.
  const std::optional<PiecewiseConstant>& as_steps() const { return steps_; }

 private:
  enum class Kind { Steps, Periodic, General };
  InitialData() = default;

  Kind kind_ = Kind::General;
  std::string name_;
  Interval range_;
  std::optional<PiecewiseConstant> steps_;
  std::vector<double> prefix_;  // primitive at each breakpoint of steps_
  double period_ = 0.0, width_ = 0.0, high_ = 0.0, low_ = 0.0, offset_ = 0.0;
  std::function<double(double)> value_fn_;
  std::function<double(double)> primitive_fn_;
};

struct LaxOleinikProblem {
  ScalarFlux flux;  // must be uniformly convex
  InitialData data;
  int scan_cells = 4096;  // grid scan resolution for general data
  double minimizer_tol = 1e-10;
};

/// Entropy solution u(t, x) via the Lax-Oleinik formula. At a shock the
/// left-limit value is returned.
double lax_oleinik_eval(const LaxOleinikProblem& p, double t, double x);

/// Extreme backward characteristics through (t, x) and the values they carry.
/// For a continuity point xi_minus == xi_plus.
struct CharacteristicPair {
  double xi_minus = 0.0;
  double xi_plus = 0.0;
  double u_minus = 0.0;
  double u_plus = 0.0;
};

CharacteristicPair backward_characteristics(const LaxOleinikProblem& p, double t, double x,
                                            double tie_tol = 1e-9);

/// Replaces u0 on each [xi_minus, xi_plus] by the two-state datum that carries
/// the same mass (shock position Xi from conservation), so that all
/// interactions are collected at time 0. Requires step data.
PiecewiseConstant modified_datum(const LaxOleinikProblem& p,
                                 const std::vector<CharacteristicPair>& shocks);

/// Position Xi of the concentrated jump for one shock record.
double concentrated_shock_position(const InitialData& data, const CharacteristicPair& s);

struct RexpResult {
  int n = 0;
  double t = 0.0;
  double l1_distance = 0.0;
  long panels = 0;
};

/// Burgers vs -v + v^2/2 with the sawtooth datum u_{0,n}, both at t = 2^{-n};
/// returns int_0^1 |v - u| dx. With `same_flux` the second flux is Burgers too.
RexpResult rexp_counterexample(int n, bool same_flux = false, long min_panels = 1L << 14);

struct TvBoundCheck {
  double tv = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// Sampled TV of u(t) on [a - 2 lambda t, b + 2 lambda t] against
/// 2 diam(K) (b - a + 4 lambda t) / (kappa t).
TvBoundCheck oleinik_tv_bound_check(const LaxOleinikProblem& p, double t, double a, double b,
                                    int grid_cells = 4096);

/// Total variation of x -> u(t, x) on a window by sampling, with local
/// extrema refined by golden-section search.
double sampled_total_variation(const std::function<double(double)>& u, Interval window,
                               int grid_cells);

struct OneSidedCheck {
  double worst_excess = 0.0;  // max of u(x2) - u(x1) - (x2 - x1)/(kappa t)
  std::size_t pairs = 0;
  bool holds = false;
};

/// u(t, x2) - u(t, x1) <= (x2 - x1) / (kappa t) on random pairs x1 < x2 in the window.
OneSidedCheck oleinik_one_sided_check(const LaxOleinikProblem& p, double t, Interval window,
                                      std::size_t pairs, std::uint64_t seed, double slack = 1e-9);

struct LinftyBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double max_deriv_gap = 0.0;
  bool holds = false;
};

/// int_a^b |u - w| for the f- and g-solutions with the same datum, against
/// 2 diam(K) t ((b - a + 4 lambda t) / (kappa t)) max_K |f' - g'|.
LinftyBoundCheck linfty_bound_check(const ScalarFlux& f, const ScalarFlux& g,
                                    const InitialData& u0, double t, double a, double b,
                                    long min_panels = 1L << 14);

/// max over `samples` equally spaced points of K of |f'(u) - g'(u)|.
double max_derivative_gap(const ScalarFlux& f, const ScalarFlux& g, int samples = 4096);

}  // namespace fluxstab

#endif  // FLUXSTAB_LAX_OLEINIK_HPP_
