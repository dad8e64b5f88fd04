#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tracemetric {

/// Dense square real matrix, row-major. Holds congruence factors, products
/// such as K^-1 V, and anything else that is not symmetric by construction.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n);  // zero-filled
  Matrix(std::size_t n, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t order() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const double> data() const { return a_; }

  Matrix transposed() const;
  double trace() const;
  double frobenius_norm() const;
  double norm1() const;  // max column sum
  double max_abs() const;
  // max |a_ij - a_ji|
  double asymmetry() const;

  // Gauss-Jordan with partial pivoting; throws DomainError when singular.
  Matrix inverse() const;
  // LU with partial pivoting.
  double determinant() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
// tr(a * b) without forming the product.
double trace_of_product(const Matrix& a, const Matrix& b);

/// Real symmetric n x n matrix, n >= 2. Entries are exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  // Accepts m when its asymmetry is within tol::kSymmetry (relative to
  // max|m_ij|), then averages the two triangles. Throws ArgumentError otherwise.
  explicit SymMatrix(const Matrix& m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  // Unconditional (m + m^T)/2, for results that are symmetric in exact arithmetic.
  static SymMatrix symmetrized(const Matrix& m);
  static SymMatrix identity(std::size_t n);
  static SymMatrix zeros(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix diagonal(std::initializer_list<double> d);
  // J_p = diag(I_p, -I_{n-p})
  static SymMatrix canonical(std::size_t n, std::size_t p);

  std::size_t order() const { return m_.order(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }
  operator const Matrix&() const { return m_; }  // NOLINT(google-explicit-constructor)

  double trace() const { return m_.trace(); }
  double frobenius_norm() const { return m_.frobenius_norm(); }

  SymMatrix operator-() const;
  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  struct Trusted {};
  SymMatrix(Trusted, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

// Congruence C A C^T, symmetric by construction.
SymMatrix congruence(const Matrix& c, const SymMatrix& a);

}  // namespace tracemetric
