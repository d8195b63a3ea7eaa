#include "fluxstab/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fluxstab/errors.hpp"
#include "fluxstab/riemann.hpp"

namespace fluxstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

FrontTracker::FrontTracker(PiecewiseLinearFlux flux, const PiecewiseConstant& u0,
                           FrontTrackingOptions options)
    : flux_(std::move(flux)), options_(options) {
  if (u0.dim() != 1) throw std::invalid_argument("FrontTracker: data must be scalar");
  seed(u0);
}

void FrontTracker::seed(const PiecewiseConstant& u0) {
  const PiecewiseConstant data = project_to_nodes(flux_, u0).simplified();
  // The left tail never changes, so it is the value once every front is gone.
  constant_ = data.piece_scalar(0);
  for (std::size_t i = 0; i < data.breakpoints().size(); ++i) {
    const double x = data.breakpoints()[i];
    const RiemannFan fan = solve_riemann(flux_, data.piece_scalar(i), data.piece_scalar(i + 1));
    for (const auto& w : fan.waves) {
      const auto& s = std::get<Shock>(w);
      lines_.push_back({x, s.speed, s.left, s.right});
    }
  }
  if (lines_.size() > options_.max_fronts) {
    throw NumericalAbort("front tracking: initial front count exceeds guard");
  }
}

std::vector<Front> FrontTracker::fronts() const {
  std::vector<Front> out;
  out.reserve(lines_.size());
  for (const auto& l : lines_) out.push_back({l.at(time_), l.speed, l.left, l.right});
  return out;
}

double FrontTracker::next_collision() const {
  double best = kInf;
  for (std::size_t i = 0; i + 1 < lines_.size(); ++i) {
    const Line& a = lines_[i];
    const Line& b = lines_[i + 1];
    const double closing = a.speed - b.speed;
    if (closing <= options_.parallel_speed_tol) continue;
    const double tau = std::max(time_, (b.intercept - a.intercept) / closing);
    best = std::min(best, tau);
  }
  return best;
}

void FrontTracker::advance_to(double t) {
  if (t < time_) throw std::invalid_argument("FrontTracker: cannot go back in time");
  while (true) {
    const double tc = next_collision();
    const double stop = std::min(tc, t);
    tv_integral_ += total_variation() * (stop - time_);
    time_ = stop;
    if (tc > t) return;
    if (!resolve_collisions()) {
      throw NumericalAbort("front tracking: collision at t=" + std::to_string(time_) +
                           " could not be resolved");
    }
    if (++interactions_ > options_.max_events) {
      throw NumericalAbort("front tracking: event count exceeded " +
                           std::to_string(options_.max_events));
    }
    if (lines_.size() > options_.max_fronts) {
      throw NumericalAbort("front tracking: front count exceeded guard");
    }
  }
}

bool FrontTracker::resolve_collisions() {
  const double now = time_;
  const double time_tol = options_.simultaneous_time_tol * std::max(1.0, now);
  const std::size_t n = lines_.size();
  // colliding[i]: fronts i and i+1 meet at `now` (within the time tolerance).
  std::vector<char> colliding(n > 0 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double closing = lines_[i].speed - lines_[i + 1].speed;
    const double gap = lines_[i + 1].at(now) - lines_[i].at(now);
    const double scale = 1e-14 * std::max(1.0, std::abs(lines_[i].at(now)));
    if (closing > options_.parallel_speed_tol) {
      colliding[i] = gap <= closing * time_tol + scale;
    } else {
      colliding[i] = std::abs(gap) <= scale && (i > 0 && colliding[i - 1]);
    }
  }

  std::vector<Line> next;
  next.reserve(n);
  bool merged = false;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && colliding[j]) ++j;
    if (j == i) {
      next.push_back(lines_[i]);
      ++i;
      continue;
    }
    // Fronts i..j meet at one point: replace them by the Riemann fan of the
    // outermost states.
    double x = 0.0;
    for (std::size_t k = i; k <= j; ++k) x += lines_[k].at(now);
    x /= static_cast<double>(j - i + 1);
    const double ul = lines_[i].left;
    const double ur = lines_[j].right;
    const RiemannFan fan = solve_riemann(flux_, ul, ur);
    for (const auto& w : fan.waves) {
      const auto& s = std::get<Shock>(w);
      next.push_back({x - s.speed * now, s.speed, s.left, s.right});
    }
    merged = true;
    i = j + 1;
  }
  lines_ = std::move(next);
  check_invariants();
  return merged;
}

void FrontTracker::check_invariants() const {
  for (std::size_t i = 0; i + 1 < lines_.size(); ++i) {
    if (lines_[i].right != lines_[i + 1].left) {
      throw NumericalAbort("front tracking: states do not chain at front " + std::to_string(i));
    }
  }
}

PiecewiseConstant FrontTracker::profile() const {
  if (lines_.empty()) return PiecewiseConstant::scalar({}, {constant_});
  std::vector<double> br;
  std::vector<double> vals{lines_.front().left};
  for (const auto& l : lines_) {
    const double x = l.at(time_);
    if (!br.empty() && !(x > br.back())) {
      // Coincident (or rounding-crossed) fronts: keep the outer states only.
      vals.back() = l.right;
      continue;
    }
    br.push_back(x);
    vals.push_back(l.right);
  }
  return PiecewiseConstant::scalar(std::move(br), std::move(vals)).simplified();
}

double FrontTracker::total_variation() const {
  double tv = 0.0;
  for (const auto& l : lines_) tv += std::abs(l.right - l.left);
  return tv;
}

FrontTrackingState ft_evolve(const PiecewiseLinearFlux& flux, const PiecewiseConstant& u0,
                             double T, FrontTrackingOptions options) {
  if (!(T >= 0.0)) throw std::invalid_argument("ft_evolve: T must be nonnegative");
  FrontTracker tracker(flux, u0, options);
  tracker.advance_to(T);
  return {tracker.time(), tracker.profile(), tracker.fronts(), tracker.interactions(),
          tracker.tv_integral()};
}

PiecewiseConstant project_to_nodes(const PiecewiseLinearFlux& flux, const PiecewiseConstant& u0) {
  std::vector<double> vals;
  vals.reserve(u0.num_pieces());
  for (std::size_t i = 0; i < u0.num_pieces(); ++i) {
    const double v = u0.piece_scalar(i);
    flux.require_in_domain(v);
    vals.push_back(flux.project(v));
  }
  return PiecewiseConstant::scalar(u0.breakpoints(), std::move(vals));
}

Interval influence_window(const PiecewiseConstant& u0, double speed_bound, double T) {
  const auto& b = u0.breakpoints();
  const double lo = b.empty() ? 0.0 : b.front();
  const double hi = b.empty() ? 0.0 : b.back();
  const double reach = speed_bound * T + 1.0;
  return {lo - reach, hi + reach};
}

double semigroup_l1_diff(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                         const PiecewiseConstant& u0, double T) {
  const FrontTrackingState sf = ft_evolve(f, u0, T);
  const FrontTrackingState sg = ft_evolve(g, u0, T);
  const Interval w = influence_window(u0, std::max(f.lambda_hat(), g.lambda_hat()), T);
  return l1_distance(sf.profile, sg.profile, w);
}

}  // namespace fluxstab
