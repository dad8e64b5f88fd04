#include "tracemetric/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tracemetric/errors.hpp"
#include "tracemetric/tolerances.hpp"

namespace tracemetric {

namespace {

void require_same_order(const Matrix& a, const Matrix& b, const char* op) {
  if (a.order() != b.order()) {
    throw ArgumentError(std::string(op) + ": order mismatch " + std::to_string(a.order()) +
                        " vs " + std::to_string(b.order()));
  }
}

void require_min_order(std::size_t n) {
  if (n < 2) throw ArgumentError("symmetric matrices must have order >= 2");
}

}  // namespace

Matrix::Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

Matrix::Matrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw ArgumentError("Matrix: entry count does not match n*n");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw ArgumentError("Matrix: rows must form a square array");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double Matrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

Matrix Matrix::inverse() const {
  Matrix a = *this;
  Matrix inv = identity(n_);
  const double scale = max_abs();
  if (scale == 0.0) throw DomainError("inverse: zero matrix");
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n_; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) <= 1e-300 + 1e-15 * scale) throw DomainError("inverse: matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double d = a(col, col);
    for (std::size_t j = 0; j < n_; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

double Matrix::determinant() const {
  Matrix a = *this;
  double det = 1.0;
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n_; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n_; ++r) {
      const double f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n_; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_order(*this, o, "operator+");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_order(*this, o, "operator-");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, double s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_order(a, b, "operator*");
  const std::size_t n = a.order();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double trace_of_product(const Matrix& a, const Matrix& b) {
  require_same_order(a, b, "trace_of_product");
  double s = 0.0;
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, i);
  return s;
}

// --- SymMatrix --------------------------------------------------------------

SymMatrix::SymMatrix(const Matrix& m) {
  require_min_order(m.order());
  const double scale = std::max(1.0, m.max_abs());
  if (m.asymmetry() > tol::kSymmetry * scale) throw ArgumentError("SymMatrix: input is not symmetric");
  *this = symmetrized(m);
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(Matrix(rows)) {}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  require_min_order(m.order());
  const std::size_t n = m.order();
  Matrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return SymMatrix(Trusted{}, std::move(s));
}

SymMatrix SymMatrix::identity(std::size_t n) {
  require_min_order(n);
  return SymMatrix(Trusted{}, Matrix::identity(n));
}

SymMatrix SymMatrix::zeros(std::size_t n) {
  require_min_order(n);
  return SymMatrix(Trusted{}, Matrix(n));
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  require_min_order(d.size());
  return SymMatrix(Trusted{}, Matrix::diagonal(d));
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

SymMatrix SymMatrix::canonical(std::size_t n, std::size_t p) {
  require_min_order(n);
  if (p > n) throw ArgumentError("canonical: p must satisfy 0 <= p <= n");
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = i < p ? 1.0 : -1.0;
  return SymMatrix(Trusted{}, std::move(m));
}

SymMatrix SymMatrix::operator-() const { return SymMatrix(Trusted{}, -m_); }

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix(SymMatrix::Trusted{}, a.m_ + b.m_);
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix(SymMatrix::Trusted{}, a.m_ - b.m_);
}

SymMatrix operator*(double s, const SymMatrix& a) { return SymMatrix(SymMatrix::Trusted{}, s * a.m_); }

SymMatrix congruence(const Matrix& c, const SymMatrix& a) {
  return SymMatrix::symmetrized(c * a.matrix() * c.transposed());
}

}  // namespace tracemetric
