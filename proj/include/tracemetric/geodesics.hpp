#pragma once

#include "tracemetric/manifold.hpp"

namespace tracemetric {

/// t |-> K exp(t C) with C = K^-1 V, V symmetric. Complete on every GLSym_n(p);
/// stays on SLSym_n(p) when tr(C) = 0.
class Geodesic {
 public:
  // Initial-value geodesic through K with velocity V.
  Geodesic(ManifoldPoint start, const SymMatrix& velocity);

  const ManifoldPoint& start() const { return start_; }
  const Matrix& direction() const { return direction_; }
  bool restricted_to_sl() const { return restricted_to_sl_; }

 private:
  ManifoldPoint start_;
  Matrix direction_;
  bool restricted_to_sl_ = false;
};

ManifoldPoint geodesic_at(const Geodesic& geo, double t);

/// gamma'(t) = gamma(t) C, evaluated analytically.
SymMatrix geodesic_velocity(const Geodesic& geo, double t);

/// The unique geodesic of P_n with gamma(0) = A, gamma(1) = B.
Geodesic geodesic_between(const ManifoldPoint& a, const ManifoldPoint& b);

/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}, the same curve evaluated in the
/// symmetric form; exact at diagonal inputs.
ManifoldPoint geodesic_point(const ManifoldPoint& a, const ManifoldPoint& b, double t);

/// A LOG(A^-1 B), the initial velocity of geodesic_between.
TangentVector log_map(const ManifoldPoint& a, const ManifoldPoint& b);

/// (sum ln^2 mu_i)^{1/2} over the eigenvalues of A^{-1/2} B A^{-1/2}.
double distance(const ManifoldPoint& a, const ManifoldPoint& b);

ManifoldPoint geometric_mean(const ManifoldPoint& a, const ManifoldPoint& b);

/// The SPD X with X A X = B, i.e. the geometric mean of A^-1 and B.
SymMatrix congruence_transporter(const ManifoldPoint& a, const ManifoldPoint& b);

}  // namespace tracemetric
