#include "tracemetric/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "tracemetric/errors.hpp"
#include "tracemetric/sampling.hpp"
#include "tracemetric/tolerances.hpp"

namespace tracemetric {

double riemann(const ManifoldPoint& k, const SymMatrix& x, const SymMatrix& y, const SymMatrix& z,
               const SymMatrix& w) {
  const Matrix& ki = k.inverse();
  const Matrix a = ki * x.matrix();
  const Matrix b = ki * y.matrix();
  const Matrix c = ki * z.matrix();
  const Matrix d = ki * w.matrix();
  return 0.25 * trace_of_product(commutator(a, b), commutator(c, d));
}

double sectional(const ManifoldPoint& k, const SymMatrix& x, const SymMatrix& y) {
  const double gxx = metric_eval(k, x, x);
  const double gyy = metric_eval(k, y, y);
  const double gxy = metric_eval(k, x, y);
  const double gram = gxx * gyy - gxy * gxy;
  const double nx = (k.inverse().matrix() * x.matrix()).frobenius_norm();
  const double ny = (k.inverse().matrix() * y.matrix()).frobenius_norm();
  if (!(std::abs(gram) > tol::kPlaneRel * nx * nx * ny * ny)) {
    throw ArgumentError("sectional: the plane is degenerate for g");
  }
  if (gxx == 0.0) return riemann(k, x, y, x, y) / gram;
  // Same plane, with y made g-orthogonal to x.
  const SymMatrix y_perp = y - (gxy / gxx) * x;
  return riemann(k, x, y_perp, x, y_perp) / (gxx * metric_eval(k, y_perp, y_perp));
}

double ricci(const ManifoldPoint& q, const SymMatrix& x, const SymMatrix& z) {
  const double n = static_cast<double>(q.order());
  const double tx = trace_of_product(q.inverse(), x);
  const double tz = trace_of_product(q.inverse(), z);
  return 0.25 * tx * tz - 0.25 * n * metric_eval(q, x, z);
}

std::vector<BasisElement> orthonormal_basis_at(const ManifoldPoint& q) {
  const CanonicalCongruence cc = congruence_to_canonical(q.matrix());
  const Matrix c_inv = cc.c.inverse();
  std::vector<BasisElement> basis = orthonormal_basis(q.order(), cc.p);
  for (BasisElement& e : basis) e.matrix = congruence(c_inv, e.matrix);
  return basis;
}

double ricci_from_riemann(const ManifoldPoint& q, const SymMatrix& x, const SymMatrix& z) {
  double s = 0.0;
  for (const BasisElement& e : orthonormal_basis_at(q)) {
    s += e.causal_sign * riemann(q, x, e.matrix, z, e.matrix);
  }
  return s;
}

double scalar_closed_form(std::size_t n) {
  const double d = static_cast<double>(n);
  return -(d - 1.0) * d * (d + 2.0) / 8.0;
}

double scalar_at(const ManifoldPoint& q, ScalarMode mode) {
  if (mode == ScalarMode::closed_form) return scalar_closed_form(q.order());
  const std::vector<BasisElement> basis = orthonormal_basis_at(q);
  double s = 0.0;
  for (const BasisElement& a : basis) {
    double ric = 0.0;
    for (const BasisElement& b : basis) ric += b.causal_sign * riemann(q, a.matrix, b.matrix, a.matrix, b.matrix);
    s += a.causal_sign * ric;
  }
  return s;
}

CurvatureReport einstein_check(const ManifoldPoint& q, std::size_t samples, std::uint64_t seed) {
  if (!q.on_unit_det_slice()) throw DomainError("einstein_check: point is off the unit-determinant slice");
  Rng rng(seed);
  const double n = static_cast<double>(q.order());
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const SymMatrix x = project_tangent_sl(q, random_symmetric(q.order(), rng)).value;
    const SymMatrix z = project_tangent_sl(q, random_symmetric(q.order(), rng)).value;
    worst = std::max(worst, std::abs(ricci_from_riemann(q, x, z) + 0.25 * n * metric_eval(q, x, z)));
  }
  return CurvatureReport{q, scalar_at(q, ScalarMode::summed), worst, samples};
}

}  // namespace tracemetric
