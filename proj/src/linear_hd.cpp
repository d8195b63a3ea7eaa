#include "fluxstab/linear_hd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fluxstab/numerics.hpp"

namespace fluxstab {

namespace {

double poly_eval(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

// Magnitude of the terms summed by poly_eval, for rounding-aware tolerances.
double poly_scale(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * std::abs(x) + std::abs(c[k]);
  return s;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

// Basis of the null space of m, with pivots below `tol` treated as zero.
std::vector<std::vector<double>> null_space(Matrix m, double tol) {
  const std::size_t n = m.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t best = row;
    for (std::size_t r = row + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
    }
    if (std::abs(m(best, col)) <= tol) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(m(row, j), m(best, j));
    const double p = m(row, col);
    for (std::size_t j = 0; j < n; ++j) m(row, j) /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row) continue;
      const double f = m(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) m(r, j) -= f * m(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<std::vector<double>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<double> v(n, 0.0);
    v[free] = 1.0;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

void normalise_sign(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  for (double x : v) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      break;
    }
  }
}

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

// phi(v) = sum_k w_k |M_k v|, the L1 gap of the two step solutions.
struct GapObjective {
  std::vector<Matrix> cells;
  std::vector<double> weights;

  double operator()(const std::vector<double>& v) const {
    double s = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) s += weights[k] * norm2(cells[k] * v);
    return s;
  }

  std::vector<double> gradient(const std::vector<double>& v) const {
    std::vector<double> g(v.size(), 0.0);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto mv = cells[k] * v;
      const double len = norm2(mv);
      if (len <= 0.0) continue;
      const Matrix mt = cells[k].transposed();
      const auto d = mt * mv;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += weights[k] * d[i] / len;
    }
    return g;
  }
};

double radical_inverse(std::size_t i, std::size_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

std::vector<std::vector<double>> sphere_points(std::size_t n, std::size_t count) {
  constexpr double kPi = std::numbers::pi;
  std::vector<std::vector<double>> pts;
  if (n == 1) return {{1.0}};
  if (n == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double th = kPi * static_cast<double>(i) / static_cast<double>(count);
      pts.push_back({std::cos(th), std::sin(th)});
    }
  } else if (n == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double ph = golden * static_cast<double>(i);
      pts.push_back({r * std::cos(ph), r * std::sin(ph), z});
    }
  } else {
    // Uniform points on S^3 from a Halton sequence through the quaternion map.
    for (std::size_t i = 1; i <= count; ++i) {
      const double u1 = radical_inverse(i, 2);
      const double u2 = radical_inverse(i, 3);
      const double u3 = radical_inverse(i, 5);
      const double a = std::sqrt(1.0 - u1);
      const double b = std::sqrt(u1);
      pts.push_back({a * std::sin(2 * kPi * u2), a * std::cos(2 * kPi * u2),
                     b * std::sin(2 * kPi * u3), b * std::cos(2 * kPi * u3)});
    }
  }
  return pts;
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
  for (const auto& r : rows) {
    if (r.size() != n_) throw std::invalid_argument("Matrix: rows must form a square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::size_t n, std::vector<double> row_major) {
  if (row_major.size() != n * n) throw std::invalid_argument("Matrix: need n*n entries");
  Matrix m(n);
  m.a_ = std::move(row_major);
  return m;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (b.n_ != n_) throw std::invalid_argument("Matrix: size mismatch");
  Matrix c(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double aik = (*this)(i, k);
      for (std::size_t j = 0; j < n_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix Matrix::operator+(const Matrix& b) const {
  if (b.n_ != n_) throw std::invalid_argument("Matrix: size mismatch");
  Matrix c = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix Matrix::operator-(const Matrix& b) const { return *this + b * -1.0; }

Matrix Matrix::operator*(double s) const {
  Matrix c = *this;
  for (double& x : c.a_) x *= s;
  return c;
}

std::vector<double> Matrix::operator*(const std::vector<double>& v) const {
  if (v.size() != n_) throw std::invalid_argument("Matrix: vector size mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> characteristic_polynomial(const Matrix& a) {
  // Faddeev-LeVerrier.
  const std::size_t n = a.size();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  Matrix m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + Matrix::identity(n) * c[n - k + 1];
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  if (c.size() == 2) return {-c[0] / c[1]};

  double bound = 0.0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) bound = std::max(bound, std::abs(c[k] / c.back()));
  bound += 1.0;

  // Roots are separated by the critical points.
  std::vector<double> marks{-bound};
  for (double x : real_roots(derivative(c))) {
    if (x > -bound && x < bound) marks.push_back(x);
  }
  marks.push_back(bound);

  const auto p = [&](double x) { return poly_eval(c, x); };
  std::vector<double> roots;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const double x = marks[i];
    const bool critical = i > 0 && i + 1 < marks.size();
    if (critical && std::abs(p(x)) <= 1e-10 * poly_scale(c, x)) roots.push_back(x);
    if (i + 1 == marks.size()) break;
    const double a = marks[i];
    const double b = marks[i + 1];
    const double pa = p(a);
    const double pb = p(b);
    if ((pa < 0.0 && pb > 0.0) || (pa > 0.0 && pb < 0.0)) {
      double r = numerics::bisect_root(p, a, b);
      // One Newton step as polish, kept only if it helps.
      const double d = poly_eval(derivative(c), r);
      if (d != 0.0) {
        const double r2 = r - p(r) / d;
        if (r2 > a && r2 < b && std::abs(p(r2)) < std::abs(p(r))) r = r2;
      }
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (!out.empty() && std::abs(r - out.back()) <= 1e-9 * (1.0 + std::abs(r))) continue;
    out.push_back(r);
  }
  return out;
}

EigenSystem decompose(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0 || n > 4) throw std::invalid_argument("decompose: need 1 <= n <= 4");
  for (double x : a.data()) {
    if (!std::isfinite(x)) throw std::invalid_argument("decompose: non-finite entry");
  }
  const double scale = std::max(1.0, a.max_abs());
  const auto poly = characteristic_polynomial(a);
  const auto roots = real_roots(poly);

  EigenSystem e;
  e.n = n;
  e.right = Matrix(n);
  std::size_t col = 0;
  for (double r : roots) {
    const auto basis = null_space(a - Matrix::identity(n) * r, 1e-9 * scale);
    for (auto v : basis) {
      if (col == n) break;
      normalise_sign(v);
      e.eigenvalues.push_back(r);
      for (std::size_t i = 0; i < n; ++i) e.right(i, col) = v[i];
      ++col;
    }
  }
  if (col < n) {
    // Count real roots with algebraic multiplicity to tell the two failures apart.
    std::size_t algebraic = 0;
    for (double r : roots) {
      auto d = poly;
      std::size_t m = 0;
      while (d.size() > 1 && std::abs(poly_eval(d, r)) <= 1e-8 * poly_scale(d, r)) {
        ++m;
        d = derivative(d);
      }
      algebraic += std::max<std::size_t>(m, 1);
    }
    const std::string why = algebraic < n ? "complex eigenvalues" : "defective eigenvalue";
    throw NotDiagonalizable("decompose: matrix " + to_string(a) + " is not real-diagonalizable (" +
                            why + "; " + std::to_string(col) + " independent real eigenvectors)");
  }
  e.left = inverse(e.right);
  return e;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(best, col))) best = r;
    }
    if (a(best, col) == 0.0) throw std::invalid_argument("inverse: singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(best, j));
      std::swap(inv(col, j), inv(best, j));
    }
    const double p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

PiecewiseConstant step_solution(const EigenSystem& e, const std::vector<double>& v, double t) {
  if (v.size() != e.n) throw std::invalid_argument("step_solution: vector size mismatch");
  if (!(t > 0.0)) throw std::invalid_argument("step_solution: t must be positive");
  const auto c = e.left * v;
  std::vector<double> br;
  std::vector<double> vals(e.n, 0.0);
  std::vector<double> state(e.n, 0.0);
  for (std::size_t i = 0; i < e.n;) {
    const double lam = e.eigenvalues[i];
    for (; i < e.n && e.eigenvalues[i] == lam; ++i) {
      for (std::size_t k = 0; k < e.n; ++k) state[k] += c[i] * e.right(k, i);
    }
    br.push_back(lam * t);
    vals.insert(vals.end(), state.begin(), state.end());
  }
  return PiecewiseConstant(e.n, std::move(br), std::move(vals));
}

HatDLinReport hat_d_lin(const Matrix& a, const Matrix& b, const HatDLinOptions& opt) {
  if (a.size() != b.size()) throw std::invalid_argument("hat_d_lin: size mismatch");
  const std::size_t n = a.size();
  const EigenSystem ea = decompose(a);
  const EigenSystem eb = decompose(b);

  std::vector<double> xs = ea.eigenvalues;
  xs.insert(xs.end(), eb.eigenvalues.begin(), eb.eigenvalues.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // On (x_k, x_{k+1}) each solution equals (sum over lambda_i <= x_k of r_i l_i^T) v.
  auto partial = [](const EigenSystem& e, double x) {
    Matrix p(e.n);
    for (std::size_t i = 0; i < e.n; ++i) {
      if (e.eigenvalues[i] > x) continue;
      for (std::size_t r = 0; r < e.n; ++r) {
        for (std::size_t s = 0; s < e.n; ++s) p(r, s) += e.right(r, i) * e.left(i, s);
      }
    }
    return p;
  };
  GapObjective phi;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    phi.cells.push_back(partial(ea, xs[k]) - partial(eb, xs[k]));
    phi.weights.push_back(xs[k + 1] - xs[k]);
  }

  HatDLinReport rep;
  rep.argmax.assign(n, 0.0);
  rep.argmax[0] = 1.0;
  if (phi.cells.empty()) {
    rep.value = 0.0;
    return rep;
  }

  const auto pts = sphere_points(n, opt.sphere_samples);
  rep.samples = pts.size();
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < pts.size(); ++i) scored.emplace_back(phi(pts[i]), i);

  std::vector<std::vector<double>> starts;
  if (n == 2) {
    // Sharpen every local maximum of the angular profile.
    const std::size_t m = pts.size();
    const double dth = std::numbers::pi / static_cast<double>(m);
    const auto at = [&](double th) { return phi({std::cos(th), std::sin(th)}); };
    for (std::size_t i = 0; i < m; ++i) {
      const double prev = scored[(i + m - 1) % m].first;
      const double next = scored[(i + 1) % m].first;
      if (scored[i].first < prev || scored[i].first < next) continue;
      const double th0 = dth * static_cast<double>(i);
      const double th =
          numerics::golden_minimize([&](double s) { return -at(s); }, th0 - dth, th0 + dth, 1e-13);
      starts.push_back({std::cos(th), std::sin(th)});
    }
  }
  std::sort(scored.begin(), scored.end(), std::greater<>());
  for (std::size_t i = 0; i < std::min(opt.ascent_starts, scored.size()); ++i) {
    starts.push_back(pts[scored[i].second]);
  }
  // The top right singular vector of B - A is always a candidate.
  {
    const auto sv = symmetric_eigen((b - a).transposed() * (b - a));
    std::vector<double> top(n);
    for (std::size_t i = 0; i < n; ++i) top[i] = sv.vectors(i, n - 1);
    starts.push_back(std::move(top));
  }

  rep.value = -1.0;
  for (auto v : starts) {
    normalise_sign(v);
    double fv = phi(v);
    double step = 0.5;
    for (int it = 0; it < opt.ascent_steps && step > 1e-14; ++it) {
      auto g = phi.gradient(v);
      const double gv = std::inner_product(g.begin(), g.end(), v.begin(), 0.0);
      for (std::size_t i = 0; i < n; ++i) g[i] -= gv * v[i];
      if (norm2(g) == 0.0) break;
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = v[i] + step * g[i];
      const double len = norm2(w);
      for (double& x : w) x /= len;
      const double fw = phi(w);
      if (fw > fv) {
        v = std::move(w);
        fv = fw;
      } else {
        step *= 0.5;
      }
    }
    if (fv > rep.value) {
      rep.value = fv;
      rep.argmax = v;
    }
  }
  normalise_sign(rep.argmax);
  return rep;
}

double hat_d_lin_value(const Matrix& a, const Matrix& b) { return hat_d_lin(a, b).value; }

SymmetricEigen symmetric_eigen(const Matrix& s) {
  const std::size_t n = s.size();
  Matrix a = s;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off <= 1e-30 * std::max(1.0, a.max_abs() * a.max_abs())) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double operator_norm(const Matrix& m) {
  const auto e = symmetric_eigen(m.transposed() * m);
  return std::sqrt(std::max(0.0, e.values.back()));
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace fluxstab
