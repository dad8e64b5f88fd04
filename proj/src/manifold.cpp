#include "tracemetric/manifold.hpp"

#include <cmath>

#include "tracemetric/errors.hpp"
#include "tracemetric/tolerances.hpp"

namespace tracemetric {

ManifoldPoint::ManifoldPoint(SymMatrix a) : a_(std::move(a)) {
  const SymEigen e = eig_sym(a_);
  const double thr = pd_threshold(e.values);
  std::vector<double> inv(e.values.size());
  double det = 1.0;
  std::size_t p = 0;
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    const double l = e.values[k];
    if (!(std::abs(l) > thr)) throw NearSingularError("ManifoldPoint: matrix is numerically singular");
    if (l > 0.0) ++p;
    det *= l;
    inv[k] = 1.0 / l;
  }
  inv_ = spectral_apply(e, inv);
  p_ = p;
  det_ = det;
  const double target = ((order() - p) % 2 == 0) ? 1.0 : -1.0;
  unit_slice_ = std::abs(det - target) < tol::kDet;
}

ManifoldPoint classify_point(const SymMatrix& a) { return ManifoldPoint(a); }

double metric_eval(const ManifoldPoint& base, const SymMatrix& v, const SymMatrix& w) {
  const Matrix& ai = base.inverse();
  return trace_of_product(ai * v.matrix(), ai * w.matrix());
}

std::vector<BasisElement> orthonormal_basis(std::size_t n, std::size_t p) {
  if (n < 2) throw ArgumentError("orthonormal_basis: n must be >= 2");
  if (p > n) throw ArgumentError("orthonormal_basis: p must satisfy 0 <= p <= n");
  std::vector<BasisElement> basis;
  basis.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix e(n);
    e(i, i) = 1.0;
    basis.push_back({SymMatrix(e), 1});
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix s(n);
      s(i, j) = r;
      s(j, i) = r;
      basis.push_back({SymMatrix(s), (i < p && j >= p) ? -1 : 1});
    }
  return basis;
}

bool is_trace_free_at(const ManifoldPoint& q, const SymMatrix& v) {
  return std::abs(trace_of_product(q.inverse(), v)) <= tol::kTraceRel * v.frobenius_norm();
}

TangentVector project_tangent_sl(const ManifoldPoint& q, const SymMatrix& v) {
  const double n = static_cast<double>(q.order());
  const double t = trace_of_product(q.inverse(), v);
  SymMatrix projected = v - (t / n) * q.matrix();
  const bool free = is_trace_free_at(q, projected);
  return TangentVector{q, std::move(projected), free};
}

std::pair<ManifoldPoint, double> product_split(const ManifoldPoint& a) {
  if (!a.is_spd()) throw DomainError("product_split: point is not positive definite");
  const double n = static_cast<double>(a.order());
  const double log_det = std::log(a.det());
  const SymMatrix q = std::exp(-log_det / n) * a.matrix();
  return {ManifoldPoint(q), log_det / std::sqrt(n)};
}

ManifoldPoint product_join(const ManifoldPoint& q, double x) {
  if (!q.in_slp()) throw DomainError("product_join: Q must be positive definite with det 1");
  const double n = static_cast<double>(q.order());
  return ManifoldPoint(std::exp(x / std::sqrt(n)) * q.matrix());
}

SymMatrix product_pushforward(const ManifoldPoint& q, double x, const SymMatrix& w, double xi) {
  const double n = static_cast<double>(q.order());
  return std::exp(x / std::sqrt(n)) * (w + (xi / std::sqrt(n)) * q.matrix());
}

ManifoldPoint negate(const ManifoldPoint& a) { return ManifoldPoint(-a.matrix()); }

}  // namespace tracemetric
