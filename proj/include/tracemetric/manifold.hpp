#pragma once

// Points and tangent vectors of GLSym_n(p), SLSym_n(p), P_n and SLP_n under
// the trace metric g_A(V, W) = tr(A^-1 V A^-1 W).

#include <cstddef>
#include <utility>
#include <vector>

#include "tracemetric/linalg.hpp"
#include "tracemetric/matrix.hpp"

namespace tracemetric {

/// A non-singular symmetric matrix together with its component GLSym_n(p)
/// and whether it lies on the slice det = (-1)^{n-p}. Classification is
/// done once, at construction, from a single eigendecomposition.
class ManifoldPoint {
 public:
  // Throws NearSingularError when the matrix is numerically singular.
  explicit ManifoldPoint(SymMatrix a);

  const SymMatrix& matrix() const { return a_; }
  const SymMatrix& inverse() const { return inv_; }
  std::size_t order() const { return a_.order(); }
  std::size_t p() const { return p_; }
  double det() const { return det_; }
  bool on_unit_det_slice() const { return unit_slice_; }
  bool is_spd() const { return p_ == order(); }
  bool in_slp() const { return is_spd() && unit_slice_; }

 private:
  SymMatrix a_;
  SymMatrix inv_;
  std::size_t p_ = 0;
  double det_ = 0.0;
  bool unit_slice_ = false;
};

struct TangentVector {
  ManifoldPoint base;
  SymMatrix value;
  bool trace_free_at_base = false;
};

struct BasisElement {
  SymMatrix matrix;
  int causal_sign = 1;  // +1 space-like, -1 time-like
};

ManifoldPoint classify_point(const SymMatrix& a);

double metric_eval(const ManifoldPoint& base, const SymMatrix& v, const SymMatrix& w);

/// E^(i,i) for every i, then S^(i,j) = (E^(i,j) + E^(j,i))/sqrt(2) for i < j
/// in lexicographic order. g_{J_p}-orthonormal; S^(i,j) with i < p <= j
/// (zero-based) are time-like.
std::vector<BasisElement> orthonormal_basis(std::size_t n, std::size_t p);

/// |tr(Q^-1 V)| <= tol::kTraceRel * ||V||_F
bool is_trace_free_at(const ManifoldPoint& q, const SymMatrix& v);

/// V - (tr(Q^-1 V)/n) Q, the g-orthogonal projection onto T_Q SLSym_n(p).
TangentVector project_tangent_sl(const ManifoldPoint& q, const SymMatrix& v);

/// P_n -> SLP_n x R, A |-> (A / det(A)^{1/n}, ln(det A)/sqrt(n)).
std::pair<ManifoldPoint, double> product_split(const ManifoldPoint& a);

/// SLP_n x R -> P_n, (Q, x) |-> e^{x/sqrt(n)} Q.
ManifoldPoint product_join(const ManifoldPoint& q, double x);

/// Differential of product_join at (Q, x) applied to (W, xi), W tangent to SLP_n.
SymMatrix product_pushforward(const ManifoldPoint& q, double x, const SymMatrix& w, double xi);

/// A |-> -A, an isometry GLSym_n(p) -> GLSym_n(n-p).
ManifoldPoint negate(const ManifoldPoint& a);

}  // namespace tracemetric
