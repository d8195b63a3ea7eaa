#include "fluxstab/lax_oleinik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fluxstab/numerics.hpp"

namespace fluxstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_convex(const ScalarFlux& f, const char* who) {
  if (!f.is_convex() || !(f.kappa() > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": flux '" + f.name() +
                                "' is not uniformly convex");
  }
}

struct Candidate {
  double y;
  double cost;
  double value = std::numeric_limits<double>::quiet_NaN();  // exact when known
};

// Cost of reaching (t, x) from y: U0(y) + t f*((x - y)/t).
double cost(const LaxOleinikProblem& p, double t, double x, double y) {
  return p.data.primitive(y) + t * p.flux.legendre((x - y) / t);
}

// Local minimisers of the cost over the backward cone, one per convex piece.
std::vector<Candidate> candidates(const LaxOleinikProblem& p, double t, double x) {
  const double reach = p.flux.lambda_hat() * t * (1.0 + 1e-12) + 1e-300;
  const double lo = x - reach;
  const double hi = x + reach;
  std::vector<Candidate> out;
  if (p.data.has_breakpoints()) {
    // On each constancy interval the cost is convex with stationary point
    // x - t f'(c), so the minimiser is that point clamped to the interval.
    std::vector<double> edges{lo};
    for (double b : p.data.breakpoints_in(lo, hi)) edges.push_back(b);
    edges.push_back(hi);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double a = edges[i];
      const double b = edges[i + 1];
      if (!(b > a)) continue;
      const double c = p.data(0.5 * (a + b));
      const double y = std::clamp(x - t * p.flux.deriv(c), a, b);
      // An interior minimiser carries the constant value unchanged.
      const bool interior = y > a && y < b;
      out.push_back({y, cost(p, t, x, y),
                     interior ? c : std::numeric_limits<double>::quiet_NaN()});
    }
    return out;
  }
  const int cells = std::max(2, p.scan_cells);
  const double h = (hi - lo) / cells;
  std::vector<double> vals(cells + 1);
  for (int i = 0; i <= cells; ++i) vals[i] = cost(p, t, x, lo + i * h);
  for (int i = 0; i <= cells; ++i) {
    const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
    const bool right_ok = i == cells || vals[i] <= vals[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = lo + std::max(0, i - 1) * h;
    const double b = lo + std::min(cells, i + 1) * h;
    const double y = numerics::golden_minimize([&](double s) { return cost(p, t, x, s); }, a, b,
                                               p.minimizer_tol);
    const double cy = cost(p, t, x, y);
    if (cy <= vals[i]) {
      out.push_back({y, cy});
    } else {
      out.push_back({lo + i * h, vals[i]});
    }
  }
  return out;
}

double value_from(const LaxOleinikProblem& p, double t, double x, const Candidate& c) {
  if (std::isfinite(c.value)) return c.value;
  return p.flux.deriv_inverse((x - c.y) / t);
}

double tie_band(double best, double tol) { return tol * (1.0 + std::abs(best)); }

}  // namespace

InitialData InitialData::steps(PiecewiseConstant u0) {
  if (u0.dim() != 1) throw std::invalid_argument("InitialData::steps: data must be scalar");
  InitialData d;
  d.kind_ = Kind::Steps;
  d.name_ = "steps";
  const auto& b = u0.breakpoints();
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < u0.num_pieces(); ++i) {
    lo = std::min(lo, u0.piece_scalar(i));
    hi = std::max(hi, u0.piece_scalar(i));
  }
  d.range_ = {lo, hi};
  // prefix_[i] = int from b[0] to b[i]
  d.prefix_.assign(b.size(), 0.0);
  for (std::size_t i = 1; i < b.size(); ++i) {
    d.prefix_[i] = d.prefix_[i - 1] + u0.piece_scalar(i) * (b[i] - b[i - 1]);
  }
  d.steps_ = std::move(u0);
  return d;
}

InitialData InitialData::periodic_step(double period, double high_width, double high, double low,
                                       double offset) {
  if (!(period > 0.0) || !(high_width >= 0.0) || high_width > period) {
    throw std::invalid_argument("InitialData::periodic_step: need 0 <= width <= period");
  }
  InitialData d;
  d.kind_ = Kind::Periodic;
  d.name_ = "periodic_step";
  d.period_ = period;
  d.width_ = high_width;
  d.high_ = high;
  d.low_ = low;
  d.offset_ = offset;
  d.range_ = {std::min(high, low), std::max(high, low)};
  return d;
}

InitialData InitialData::sawtooth(int n) {
  if (n < 1) throw std::invalid_argument("InitialData::sawtooth: n must be >= 1");
  InitialData d = periodic_step(std::ldexp(1.0, 1 - n), std::ldexp(1.0, -n), 1.0, -1.0);
  d.name_ = "sawtooth " + std::to_string(n);
  return d;
}

InitialData InitialData::general(std::function<double(double)> value,
                                 std::function<double(double)> primitive, Interval range,
                                 std::string name) {
  InitialData d;
  d.kind_ = Kind::General;
  d.name_ = std::move(name);
  d.value_fn_ = std::move(value);
  d.primitive_fn_ = std::move(primitive);
  d.range_ = range;
  return d;
}

double InitialData::operator()(double x) const {
  switch (kind_) {
    case Kind::Steps:
      return steps_->scalar_at(x);
    case Kind::Periodic: {
      const double r = x - offset_ - std::floor((x - offset_) / period_) * period_;
      return r <= width_ ? high_ : low_;
    }
    case Kind::General:
      break;
  }
  return value_fn_(x);
}

double InitialData::primitive(double y) const {
  switch (kind_) {
    case Kind::Steps: {
      const auto& b = steps_->breakpoints();
      if (b.empty()) return steps_->piece_scalar(0) * y;
      auto from_first = [&](double s) {
        const std::size_t k = steps_->piece_index(s);
        if (k == 0) return steps_->piece_scalar(0) * (s - b[0]);
        return prefix_[k - 1] + steps_->piece_scalar(k) * (s - b[k - 1]);
      };
      return from_first(y) - from_first(0.0);
    }
    case Kind::Periodic: {
      const double mass = high_ * width_ + low_ * (period_ - width_);
      auto from_offset = [&](double s) {
        const double k = std::floor((s - offset_) / period_);
        const double r = s - offset_ - k * period_;
        return k * mass + high_ * std::min(r, width_) + low_ * std::max(r - width_, 0.0);
      };
      return from_offset(y) - from_offset(0.0);
    }
    case Kind::General:
      break;
  }
  return primitive_fn_(y);
}

std::vector<double> InitialData::breakpoints_in(double a, double b) const {
  std::vector<double> out;
  if (kind_ == Kind::Steps) {
    for (double x : steps_->breakpoints()) {
      if (x > a && x < b) out.push_back(x);
    }
  } else if (kind_ == Kind::Periodic) {
    const double k0 = std::floor((a - offset_) / period_) - 1.0;
    for (double k = k0;; k += 1.0) {
      const double s = offset_ + k * period_;
      if (s >= b) break;
      for (double x : {s, s + width_}) {
        if (x > a && x < b && (out.empty() || x > out.back())) out.push_back(x);
      }
    }
  }
  return out;
}

double lax_oleinik_eval(const LaxOleinikProblem& p, double t, double x) {
  require_convex(p.flux, "lax_oleinik_eval");
  if (!(t > 0.0)) throw std::invalid_argument("lax_oleinik_eval: t must be positive");
  const auto cands = candidates(p, t, x);
  double best = kInf;
  for (const auto& c : cands) best = std::min(best, c.cost);
  // Candidates come in increasing y, so the first one within the tie band is
  // the leftmost minimiser, which carries the left limit.
  const double band = tie_band(best, 1e-14);
  for (const auto& c : cands) {
    if (c.cost <= best + band) return value_from(p, t, x, c);
  }
  throw std::logic_error("lax_oleinik_eval: no minimiser found");
}

CharacteristicPair backward_characteristics(const LaxOleinikProblem& p, double t, double x,
                                            double tie_tol) {
  require_convex(p.flux, "backward_characteristics");
  if (!(t > 0.0)) throw std::invalid_argument("backward_characteristics: t must be positive");
  const auto cands = candidates(p, t, x);
  double best = kInf;
  for (const auto& c : cands) best = std::min(best, c.cost);
  const double band = tie_band(best, tie_tol);
  const Candidate* left = nullptr;
  const Candidate* right = nullptr;
  for (const auto& c : cands) {
    if (c.cost > best + band) continue;
    if (!left || c.y < left->y) left = &c;
    if (!right || c.y > right->y) right = &c;
  }
  return {left->y, right->y, value_from(p, t, x, *left), value_from(p, t, x, *right)};
}

double concentrated_shock_position(const InitialData& data, const CharacteristicPair& s) {
  if (s.u_minus == s.u_plus) return s.xi_minus;
  const double mass = data.primitive(s.xi_plus) - data.primitive(s.xi_minus);
  return (mass + s.u_minus * s.xi_minus - s.u_plus * s.xi_plus) / (s.u_minus - s.u_plus);
}

PiecewiseConstant modified_datum(const LaxOleinikProblem& p,
                                 const std::vector<CharacteristicPair>& shocks) {
  const auto& base = p.data.as_steps();
  if (!base) throw std::invalid_argument("modified_datum: requires finite step data");
  std::vector<CharacteristicPair> list;
  for (const auto& s : shocks) {
    if (s.xi_plus < s.xi_minus) throw std::invalid_argument("modified_datum: xi+ < xi-");
    if (s.xi_plus > s.xi_minus) list.push_back(s);
  }
  std::sort(list.begin(), list.end(),
            [](const auto& a, const auto& b) { return a.xi_minus < b.xi_minus; });
  for (std::size_t i = 0; i + 1 < list.size(); ++i) {
    if (list[i].xi_plus > list[i + 1].xi_minus) {
      throw std::invalid_argument("modified_datum: characteristic triangles overlap");
    }
  }

  const PiecewiseConstant& u0 = *base;
  std::vector<double> br;
  std::vector<double> vals{u0.piece_scalar(0)};
  auto append = [&](double x, double v) {
    if (!br.empty() && !(x > br.back())) {
      vals.back() = v;
      return;
    }
    br.push_back(x);
    vals.push_back(v);
  };
  const auto& b = u0.breakpoints();
  std::size_t next = 0;  // next original breakpoint to copy
  for (const auto& s : list) {
    for (; next < b.size() && b[next] < s.xi_minus; ++next) append(b[next], u0.piece_scalar(next + 1));
    const double xi = std::clamp(concentrated_shock_position(p.data, s), s.xi_minus, s.xi_plus);
    append(s.xi_minus, s.u_minus);
    append(xi, s.u_plus);
    append(s.xi_plus, u0.scalar_at(s.xi_plus));
    while (next < b.size() && b[next] <= s.xi_plus) ++next;
  }
  for (; next < b.size(); ++next) append(b[next], u0.piece_scalar(next + 1));
  return PiecewiseConstant::scalar(std::move(br), std::move(vals)).simplified();
}

RexpResult rexp_counterexample(int n, bool same_flux, long min_panels) {
  if (n < 1) throw std::invalid_argument("rexp_counterexample: n must be >= 1");
  const LaxOleinikProblem p{burgers({-1.0, 1.0}), InitialData::sawtooth(n)};
  const double t = std::ldexp(1.0, -n);
  // The second flux is Burgers minus the identity: its solution is the
  // Burgers solution seen from a frame moving with unit speed.
  const double shift = same_flux ? 0.0 : t;
  const auto gap = [&](double x) {
    return std::abs(lax_oleinik_eval(p, t, x + shift) - lax_oleinik_eval(p, t, x));
  };
  const auto r = numerics::refine_midpoint(gap, 0.0, 1.0, min_panels);
  return {n, t, r.value, r.panels};
}

double sampled_total_variation(const std::function<double(double)>& u, Interval window,
                               int grid_cells) {
  if (!(window.hi > window.lo)) return 0.0;
  const int n = std::max(2, grid_cells);
  const double h = window.length() / n;
  std::vector<double> xs(n + 1), vs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = i == n ? window.hi : window.lo + i * h;
    vs[i] = u(xs[i]);
  }
  // Interior extrema may be cut off by the grid; sharpen them.
  std::vector<double> sharp = vs;
  for (int i = 1; i < n; ++i) {
    const bool peak = vs[i] > vs[i - 1] && vs[i] > vs[i + 1];
    const bool dip = vs[i] < vs[i - 1] && vs[i] < vs[i + 1];
    if (!peak && !dip) continue;
    const double sign = peak ? -1.0 : 1.0;
    const double x = numerics::golden_minimize([&](double s) { return sign * u(s); }, xs[i - 1],
                                               xs[i + 1], 1e-12 * (1.0 + std::abs(xs[i])));
    const double v = u(x);
    if (peak ? v > sharp[i] : v < sharp[i]) sharp[i] = v;
  }
  double tv = 0.0;
  for (int i = 0; i < n; ++i) tv += std::abs(sharp[i + 1] - sharp[i]);
  return tv;
}

TvBoundCheck oleinik_tv_bound_check(const LaxOleinikProblem& p, double t, double a, double b,
                                    int grid_cells) {
  require_convex(p.flux, "oleinik_tv_bound_check");
  if (!(t > 0.0) || !(a < b)) throw std::invalid_argument("oleinik_tv_bound_check: bad t or window");
  const double lam = p.flux.lambda_hat();
  const Interval w{a - 2.0 * lam * t, b + 2.0 * lam * t};
  TvBoundCheck out;
  out.tv = sampled_total_variation([&](double x) { return lax_oleinik_eval(p, t, x); }, w,
                                   grid_cells);
  out.bound = 2.0 * p.flux.domain().length() * (b - a + 4.0 * lam * t) / (p.flux.kappa() * t);
  out.holds = out.tv <= out.bound;
  return out;
}

OneSidedCheck oleinik_one_sided_check(const LaxOleinikProblem& p, double t, Interval window,
                                      std::size_t pairs, std::uint64_t seed, double slack) {
  require_convex(p.flux, "oleinik_one_sided_check");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(window.lo, window.hi);
  OneSidedCheck out;
  out.worst_excess = -kInf;
  const double rate = 1.0 / (p.flux.kappa() * t);
  for (std::size_t k = 0; k < pairs; ++k) {
    double x1 = pick(rng);
    double x2 = pick(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (x1 == x2) continue;
    const double excess =
        lax_oleinik_eval(p, t, x2) - lax_oleinik_eval(p, t, x1) - (x2 - x1) * rate;
    out.worst_excess = std::max(out.worst_excess, excess);
    ++out.pairs;
  }
  out.holds = out.worst_excess <= slack;
  return out;
}

double max_derivative_gap(const ScalarFlux& f, const ScalarFlux& g, int samples) {
  const Interval k{std::max(f.domain().lo, g.domain().lo), std::min(f.domain().hi, g.domain().hi)};
  double best = 0.0;
  const int n = std::max(2, samples);
  for (int i = 0; i < n; ++i) {
    const double u = k.lo + k.length() * i / (n - 1);
    best = std::max(best, std::abs(f.deriv(u) - g.deriv(u)));
  }
  return best;
}

LinftyBoundCheck linfty_bound_check(const ScalarFlux& f, const ScalarFlux& g,
                                    const InitialData& u0, double t, double a, double b,
                                    long min_panels) {
  require_convex(f, "linfty_bound_check");
  require_convex(g, "linfty_bound_check");
  if (!(t > 0.0) || !(a < b)) throw std::invalid_argument("linfty_bound_check: bad t or window");
  const LaxOleinikProblem pf{f, u0};
  const LaxOleinikProblem pg{g, u0};
  LinftyBoundCheck out;
  out.lhs = numerics::refine_midpoint(
                [&](double x) {
                  return std::abs(lax_oleinik_eval(pf, t, x) - lax_oleinik_eval(pg, t, x));
                },
                a, b, min_panels)
                .value;
  const double kappa = std::min(f.kappa(), g.kappa());
  const double lam = std::max(f.lambda_hat(), g.lambda_hat());
  const double diam = std::max(f.domain().length(), g.domain().length());
  out.max_deriv_gap = max_derivative_gap(f, g);
  // Kept in the uncancelled form t * (.../(kappa t)).
  out.rhs = 2.0 * diam * t * ((b - a + 4.0 * lam * t) / (kappa * t)) * out.max_deriv_gap;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

}  // namespace fluxstab
