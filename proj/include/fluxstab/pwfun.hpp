#ifndef FLUXSTAB_PWFUN_HPP_
#define FLUXSTAB_PWFUN_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fluxstab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Vector-valued step function of one real variable.
///
/// Breakpoints x_1 < ... < x_m split the line into m+1 open intervals; the
/// value on each (including both unbounded tails) is stored as a `dim`-vector.
/// Pointwise evaluation at a breakpoint returns the right limit. All vector
/// magnitudes use the Euclidean norm.
class PiecewiseConstant {
 public:
  /// Constant function.
  explicit PiecewiseConstant(std::vector<double> value);

  /// `values` is row-major: (breakpoints.size()+1) rows of `dim` entries.
  PiecewiseConstant(std::size_t dim, std::vector<double> breakpoints,
                    std::vector<double> values);

  /// Scalar convenience constructor.
  static PiecewiseConstant scalar(std::vector<double> breakpoints,
                                  std::vector<double> values);

  std::size_t dim() const { return dim_; }
  std::size_t num_pieces() const { return breaks_.size() + 1; }
  const std::vector<double>& breakpoints() const { return breaks_; }

  /// Value on piece i (piece 0 is the left tail).
  std::span<const double> piece(std::size_t i) const;
  /// Scalar value on piece i; requires dim() == 1.
  double piece_scalar(std::size_t i) const;

  /// Index of the piece containing x, with breakpoints belonging to the right.
  std::size_t piece_index(double x) const;
  std::span<const double> operator()(double x) const { return piece(piece_index(x)); }
  double scalar_at(double x) const { return piece_scalar(piece_index(x)); }

  /// Sum of jump magnitudes at breakpoints strictly inside the window.
  double total_variation(std::optional<Interval> window = std::nullopt) const;

  /// Componentwise integral over a finite window.
  std::vector<double> integral(Interval window) const;

  /// Same function with breakpoints moved by `shift` and dilated by `scale`
  /// about the origin: x -> scale * x + shift.
  PiecewiseConstant transformed(double scale, double shift) const;

  /// Drop breakpoints across which the value does not change.
  PiecewiseConstant simplified() const;

  /// Same function with the extra breakpoints inserted (values repeated).
  PiecewiseConstant refined(std::span<const double> extra_breakpoints) const;

  /// Pointwise linear combination a*f + b*g.
  static PiecewiseConstant combine(double a, const PiecewiseConstant& f,
                                   double b, const PiecewiseConstant& g);

  friend bool operator==(const PiecewiseConstant&, const PiecewiseConstant&) = default;

 private:
  std::size_t dim_;
  std::vector<double> breaks_;
  std::vector<double> values_;
};

/// Sorted union of two breakpoint lists with exact duplicates removed.
std::vector<double> merge_breakpoints(std::span<const double> a,
                                      std::span<const double> b);

/// Exact integral of |f - g| over a finite window. Throws
/// std::invalid_argument on dimension mismatch or an inverted window.
double l1_distance(const PiecewiseConstant& f, const PiecewiseConstant& g,
                   Interval window);

/// Line-oriented text form:
///
///     dim <n>
///     -inf v1 ... vn
///     x1   v1 ... vn
///     ...
///
/// Each row gives the value from its breakpoint up to the next one.
void write_text(std::ostream& os, const PiecewiseConstant& f);
PiecewiseConstant read_text(std::istream& is);

}  // namespace fluxstab

#endif  // FLUXSTAB_PWFUN_HPP_
