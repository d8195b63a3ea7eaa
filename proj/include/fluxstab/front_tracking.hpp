#ifndef FLUXSTAB_FRONT_TRACKING_HPP_
#define FLUXSTAB_FRONT_TRACKING_HPP_

#include <cstddef>
#include <vector>

#include "fluxstab/pwfun.hpp"
#include "fluxstab/scalar_flux.hpp"

namespace fluxstab {

struct Front {
  double x = 0.0;
  double speed = 0.0;
  double left = 0.0;
  double right = 0.0;
};

struct FrontTrackingOptions {
  std::size_t max_events = 10'000'000;
  std::size_t max_fronts = 1'000'000;
  // Collisions closer than this in time are resolved together.
  double simultaneous_time_tol = 1e-12;
  // Speeds closer than this never collide.
  double parallel_speed_tol = 1e-14;
};

/// Event-driven exact solver for u_t + f(u)_x = 0 with piecewise-linear f and
/// piecewise-constant data. Data values are projected onto the flux nodes;
/// every front then joins two node values and moves at the chord speed.
class FrontTracker {
 public:
  FrontTracker(PiecewiseLinearFlux flux, const PiecewiseConstant& u0,
               FrontTrackingOptions options = {});

  /// Advances to time t >= time(). Throws NumericalAbort when the guards trip.
  void advance_to(double t);

  double time() const { return time_; }
  /// Fronts at the current time, ordered by position.
  std::vector<Front> fronts() const;
  std::size_t num_fronts() const { return lines_.size(); }
  const PiecewiseLinearFlux& flux() const { return flux_; }
  std::size_t interactions() const { return interactions_; }

  /// Current solution as a step function (coincident fronts merged).
  PiecewiseConstant profile() const;
  /// Sum of front strengths.
  double total_variation() const;
  /// Exact integral of total variation over [0, time()].
  double tv_integral() const { return tv_integral_; }

 private:
  // A front moves on the line x(t) = intercept + speed * t.
  struct Line {
    double intercept;
    double speed;
    double left;
    double right;
    double at(double t) const { return intercept + speed * t; }
  };

  void seed(const PiecewiseConstant& u0);
  double next_collision() const;
  bool resolve_collisions();
  void check_invariants() const;

  PiecewiseLinearFlux flux_;
  FrontTrackingOptions options_;
  std::vector<Line> lines_;
  double constant_ = 0.0;  // value when there are no fronts
  double time_ = 0.0;
  double tv_integral_ = 0.0;
  std::size_t interactions_ = 0;
};

struct FrontTrackingState {
  double time = 0.0;
  PiecewiseConstant profile;
  std::vector<Front> fronts;
  std::size_t interactions = 0;
  double tv_integral = 0.0;
};

FrontTrackingState ft_evolve(const PiecewiseLinearFlux& flux, const PiecewiseConstant& u0,
                             double T, FrontTrackingOptions options = {});

/// Projects every value of u0 onto the nearest flux node.
PiecewiseConstant project_to_nodes(const PiecewiseLinearFlux& flux, const PiecewiseConstant& u0);

/// A window guaranteed to contain every point where S^f_T u0 or S^g_T u0
/// differ from the outer tails.
Interval influence_window(const PiecewiseConstant& u0, double speed_bound, double T);

/// ||S^f_T u0 - S^g_T u0||_{L^1} from two front-tracking runs.
double semigroup_l1_diff(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                         const PiecewiseConstant& u0, double T);

}  // namespace fluxstab

#endif  // FLUXSTAB_FRONT_TRACKING_HPP_
