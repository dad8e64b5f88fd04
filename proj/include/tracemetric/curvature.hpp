#pragma once

#include <cstddef>
#include <cstdint>

#include "tracemetric/manifold.hpp"

namespace tracemetric {

/// R_XYZW(K) = 1/4 tr([K^-1 X, K^-1 Y][K^-1 Z, K^-1 W]).
double riemann(const ManifoldPoint& k, const SymMatrix& x, const SymMatrix& y, const SymMatrix& z,
               const SymMatrix& w);

/// R_XYXY / (g(X,X) g(Y,Y) - g(X,Y)^2). With this convention every plane of
/// SLP_2 has curvature -1/2. Throws ArgumentError for a degenerate plane,
/// i.e. |Gram det| <= tol::kPlaneRel * ||K^-1 X||_F^2 ||K^-1 Y||_F^2.
double sectional(const ManifoldPoint& k, const SymMatrix& x, const SymMatrix& y);

/// Closed form 1/4 tr(Q^-1 X) tr(Q^-1 Z) - n/4 g_Q(X, Z).
double ricci(const ManifoldPoint& q, const SymMatrix& x, const SymMatrix& z);

/// sum_k eps_k R(X, V_k, Z, V_k) over a g_Q-orthonormal basis {V_k} with
/// eps_k = g_Q(V_k, V_k); the Ricci tensor traced out of riemann().
double ricci_from_riemann(const ManifoldPoint& q, const SymMatrix& x, const SymMatrix& z);

/// The Prop-2.1-style basis at J_p carried to Q by the congruence that maps
/// J_p to Q: V_k = C^-1 E_k C^-T where C Q C^T = J_p.
std::vector<BasisElement> orthonormal_basis_at(const ManifoldPoint& q);

enum class ScalarMode { closed_form, summed };

/// -(n-1)n(n+2)/8, or the double contraction of riemann() over the
/// transported basis.
double scalar_at(const ManifoldPoint& q, ScalarMode mode);

double scalar_closed_form(std::size_t n);

struct CurvatureReport {
  ManifoldPoint base;
  double scalar = 0.0;             // summed contraction
  double einstein_residual = 0.0;  // max |Ric(X,Z) + (n/4) g(X,Z)|
  std::size_t samples = 0;
};

/// Samples trace-constrained tangent pairs at Q (seeded, reproducible) and
/// reports the Einstein residual. Throws DomainError when Q is off the
/// det = (-1)^{n-p} slice.
CurvatureReport einstein_check(const ManifoldPoint& q, std::size_t samples, std::uint64_t seed);

}  // namespace tracemetric
