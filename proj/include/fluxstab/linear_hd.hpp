#ifndef FLUXSTAB_LINEAR_HD_HPP_
#define FLUXSTAB_LINEAR_HD_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluxstab/pwfun.hpp"

namespace fluxstab {

/// Small dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::size_t n, std::vector<double> row_major);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix operator*(double s) const;
  std::vector<double> operator*(const std::vector<double>& v) const;
  Matrix transposed() const;
  double trace() const;
  /// Largest absolute entry.
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Raised when a matrix has complex or defective spectrum.
class NotDiagonalizable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Real eigen-decomposition A = R diag(lambda) L with L = R^{-1}.
/// Eigenvalues are nondecreasing; eigenvector i is column i of `right`.
struct EigenSystem {
  std::size_t n = 0;
  std::vector<double> eigenvalues;
  Matrix right;
  Matrix left;
};

/// Decomposes A (n <= 4) through its characteristic polynomial. Columns of R
/// have unit length with their first nonzero entry positive. Throws
/// NotDiagonalizable for complex or defective spectra.
EigenSystem decompose(const Matrix& a);

/// Coefficients c[0..n] of det(lambda I - A) = sum c[k] lambda^k, c[n] = 1.
std::vector<double> characteristic_polynomial(const Matrix& a);

/// Real roots of a polynomial (coefficients low to high), ascending, with
/// multiple roots reported once.
std::vector<double> real_roots(const std::vector<double>& coeffs);

/// Solution at time t of u_t + A u_x = 0 with datum v H(x):
/// sum_i (L v)_i r_i H(x - lambda_i t).
PiecewiseConstant step_solution(const EigenSystem& e, const std::vector<double>& v, double t);

struct HatDLinReport {
  double value = 0.0;
  std::vector<double> argmax;  // unit vector attaining `value`
  std::size_t samples = 0;     // sphere directions scanned
  bool lower_bound = true;
};

struct HatDLinOptions {
  std::size_t sphere_samples = 4096;
  int ascent_steps = 200;
  std::size_t ascent_starts = 8;  // best sampled directions refined by ascent
};

/// sup over |v| = 1 of || A^1 * v - B^1 * v ||_{L^1}.
HatDLinReport hat_d_lin(const Matrix& a, const Matrix& b, const HatDLinOptions& opt = {});
double hat_d_lin_value(const Matrix& a, const Matrix& b);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// symmetric matrix by cyclic Jacobi rotations.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};
SymmetricEigen symmetric_eigen(const Matrix& s);

/// Inverse by Gauss-Jordan elimination with partial pivoting.
Matrix inverse(const Matrix& m);

std::string to_string(const Matrix& m);

}  // namespace fluxstab

#endif  // FLUXSTAB_LINEAR_HD_HPP_
