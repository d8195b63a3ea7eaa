#include "fluxstab/pwfun.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fluxstab {

namespace {

double euclid_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

PiecewiseConstant::PiecewiseConstant(std::vector<double> value)
    : dim_(value.size()), values_(std::move(value)) {
  if (dim_ == 0) throw std::invalid_argument("PiecewiseConstant: dim must be positive");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("PiecewiseConstant: non-finite value");
  }
}

PiecewiseConstant::PiecewiseConstant(std::size_t dim, std::vector<double> breakpoints,
                                     std::vector<double> values)
    : dim_(dim), breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (dim_ == 0) throw std::invalid_argument("PiecewiseConstant: dim must be positive");
  if (values_.size() != dim_ * (breaks_.size() + 1)) {
    throw std::invalid_argument("PiecewiseConstant: need breakpoints+1 value rows");
  }
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (!std::isfinite(breaks_[i])) {
      throw std::invalid_argument("PiecewiseConstant: non-finite breakpoint");
    }
    if (i > 0 && !(breaks_[i - 1] < breaks_[i])) {
      throw std::invalid_argument("PiecewiseConstant: breakpoints must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("PiecewiseConstant: non-finite value");
  }
}

PiecewiseConstant PiecewiseConstant::scalar(std::vector<double> breakpoints,
                                            std::vector<double> values) {
  return PiecewiseConstant(1, std::move(breakpoints), std::move(values));
}

std::span<const double> PiecewiseConstant::piece(std::size_t i) const {
  return std::span<const double>(values_).subspan(i * dim_, dim_);
}

double PiecewiseConstant::piece_scalar(std::size_t i) const {
  if (dim_ != 1) throw std::invalid_argument("piece_scalar: function is not scalar");
  return values_[i];
}

std::size_t PiecewiseConstant::piece_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), x) -
                                  breaks_.begin());
}

double PiecewiseConstant::total_variation(std::optional<Interval> window) const {
  double tv = 0.0;
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (window && !(window->lo < breaks_[i] && breaks_[i] < window->hi)) continue;
    tv += euclid_diff(piece(i), piece(i + 1));
  }
  return tv;
}

std::vector<double> PiecewiseConstant::integral(Interval window) const {
  if (!(window.lo <= window.hi)) throw std::invalid_argument("integral: inverted window");
  std::vector<double> out(dim_, 0.0);
  double left = window.lo;
  std::size_t i = piece_index(window.lo);
  while (left < window.hi) {
    const double right = i < breaks_.size() ? std::min(breaks_[i], window.hi) : window.hi;
    const auto v = piece(i);
    for (std::size_t k = 0; k < dim_; ++k) out[k] += v[k] * (right - left);
    left = right;
    ++i;
  }
  return out;
}

PiecewiseConstant PiecewiseConstant::transformed(double scale, double shift) const {
  if (!(scale > 0.0)) throw std::invalid_argument("transformed: scale must be positive");
  std::vector<double> b(breaks_);
  for (double& x : b) x = scale * x + shift;
  // Rounding can collapse neighbours; the right-hand value wins.
  std::vector<double> kept_b;
  std::vector<double> kept_v(values_.begin(), values_.begin() + static_cast<long>(dim_));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto row = piece(i + 1);
    if (!kept_b.empty() && !(kept_b.back() < b[i])) {
      std::copy(row.begin(), row.end(), kept_v.end() - static_cast<long>(dim_));
      continue;
    }
    kept_b.push_back(b[i]);
    kept_v.insert(kept_v.end(), row.begin(), row.end());
  }
  return PiecewiseConstant(dim_, std::move(kept_b), std::move(kept_v));
}

PiecewiseConstant PiecewiseConstant::simplified() const {
  std::vector<double> b;
  std::vector<double> v(values_.begin(), values_.begin() + static_cast<long>(dim_));
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    const auto row = piece(i + 1);
    if (std::equal(row.begin(), row.end(), v.end() - static_cast<long>(dim_))) continue;
    b.push_back(breaks_[i]);
    v.insert(v.end(), row.begin(), row.end());
  }
  return PiecewiseConstant(dim_, std::move(b), std::move(v));
}

PiecewiseConstant PiecewiseConstant::refined(std::span<const double> extra) const {
  std::vector<double> b = merge_breakpoints(breaks_, extra);
  std::vector<double> v;
  v.reserve(dim_ * (b.size() + 1));
  const auto tail = piece(0);
  v.insert(v.end(), tail.begin(), tail.end());
  for (double x : b) {
    const auto row = (*this)(x);
    v.insert(v.end(), row.begin(), row.end());
  }
  return PiecewiseConstant(dim_, std::move(b), std::move(v));
}

PiecewiseConstant PiecewiseConstant::combine(double a, const PiecewiseConstant& f, double b,
                                             const PiecewiseConstant& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("combine: dimension mismatch");
  const std::size_t n = f.dim();
  std::vector<double> br = merge_breakpoints(f.breaks_, g.breaks_);
  std::vector<double> v;
  v.reserve(n * (br.size() + 1));
  auto push = [&](std::span<const double> x, std::span<const double> y) {
    for (std::size_t k = 0; k < n; ++k) v.push_back(a * x[k] + b * y[k]);
  };
  push(f.piece(0), g.piece(0));
  for (double x : br) push(f(x), g(x));
  return PiecewiseConstant(n, std::move(br), std::move(v));
}

std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double l1_distance(const PiecewiseConstant& f, const PiecewiseConstant& g, Interval window) {
  if (f.dim() != g.dim()) throw std::invalid_argument("l1_distance: dimension mismatch");
  if (!(window.lo <= window.hi) || !std::isfinite(window.lo) || !std::isfinite(window.hi)) {
    throw std::invalid_argument("l1_distance: window must be finite with lo <= hi");
  }
  const std::vector<double> br = merge_breakpoints(f.breakpoints(), g.breakpoints());
  auto first = std::upper_bound(br.begin(), br.end(), window.lo);
  double left = window.lo;
  double total = 0.0;
  // On each merged cell both functions are constant; sample at the left edge
  // (right-limit convention puts the cell value there).
  for (auto it = first;; ++it) {
    const double right = (it == br.end() || *it > window.hi) ? window.hi : *it;
    if (right > left) total += euclid_diff(f(left), g(left)) * (right - left);
    left = right;
    if (it == br.end() || *it >= window.hi) break;
  }
  return total;
}

void write_text(std::ostream& os, const PiecewiseConstant& f) {
  const auto old_prec = os.precision(17);
  os << "dim " << f.dim() << '\n';
  for (std::size_t i = 0; i < f.num_pieces(); ++i) {
    if (i == 0) {
      os << "-inf";
    } else {
      os << f.breakpoints()[i - 1];
    }
    for (double v : f.piece(i)) os << ' ' << v;
    os << '\n';
  }
  os.precision(old_prec);
}

PiecewiseConstant read_text(std::istream& is) {
  std::string line;
  std::size_t dim = 0;
  std::vector<double> breaks;
  std::vector<double> values;
  bool have_tail = false;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "dim") {
      if (!(ls >> dim) || dim == 0) throw std::invalid_argument("read_text: bad dim line");
      continue;
    }
    if (dim == 0) throw std::invalid_argument("read_text: missing 'dim' header");
    if (head == "-inf") {
      if (have_tail) throw std::invalid_argument("read_text: duplicate -inf row");
      have_tail = true;
    } else {
      if (!have_tail) throw std::invalid_argument("read_text: first row must start with -inf");
      try {
        std::size_t used = 0;
        breaks.push_back(std::stod(head, &used));
        if (used != head.size()) throw std::invalid_argument(head);
      } catch (const std::exception&) {
        throw std::invalid_argument("read_text: bad breakpoint '" + head + "'");
      }
    }
    for (std::size_t k = 0; k < dim; ++k) {
      double v;
      if (!(ls >> v)) throw std::invalid_argument("read_text: short value row");
      values.push_back(v);
    }
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("read_text: trailing data in row");
  }
  if (!have_tail) throw std::invalid_argument("read_text: no value rows");
  return PiecewiseConstant(dim, std::move(breaks), std::move(values));
}

}  // namespace fluxstab
