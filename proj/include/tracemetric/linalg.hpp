#pragma once

// Dense kernels for symmetric and general square matrices: the numerical
// floor every geometric routine stands on.

#include <cstddef>
#include <vector>

#include "tracemetric/matrix.hpp"

namespace tracemetric {

struct Signature {
  std::size_t p = 0;  // positive eigenvalues
  std::size_t q = 0;  // negative eigenvalues
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SymEigen {
  Matrix vectors;              // orthogonal, eigenvectors as columns
  std::vector<double> values;  // ascending
};

/// Cyclic Jacobi eigendecomposition. Eigenvalues come back ascending; each
/// eigenvector column has its first non-negligible component positive.
/// Throws IterationError if the off-diagonal mass does not fall below
/// tol::kJacobiRel * ||A||_F within tol::kJacobiMaxSweeps sweeps.
SymEigen eig_sym(const SymMatrix& a);

/// Rebuilds Q diag(f(lambda)) Q^T.
SymMatrix spectral_apply(const SymEigen& e, const std::vector<double>& f_of_values);

/// Scaling-and-squaring Taylor exponential.
Matrix expm(const Matrix& c);

/// Principal logarithm of a symmetric positive-definite M.
Matrix log_principal(const Matrix& m);

/// Principal logarithm of a non-symmetric M that is real-diagonalizable with
/// positive spectrum, certified by an SPD witness W with W*M symmetric (so
/// M = W^-1 B for SPD B = W*M). Diagonalizes W^{1/2} M W^{-1/2}.
Matrix log_principal(const Matrix& m, const SymMatrix& witness);

/// LOG(A^-1 B) for SPD A, B through the symmetric form A^{-1/2} B A^{-1/2}.
Matrix log_spd_pair(const SymMatrix& a, const SymMatrix& b);

/// M^r = exp(r LOG(M)), same domains as the log_principal overloads.
Matrix power_frac(const Matrix& m, double r);
Matrix power_frac(const Matrix& m, const SymMatrix& witness, double r);

/// S^r for SPD S, computed spectrally.
SymMatrix spd_power(const SymMatrix& s, double r);

SymMatrix sqrt_spd(const SymMatrix& a);

struct Polar {
  Matrix u;     // orthogonal
  SymMatrix q;  // SPD, (A^T A)^{1/2}
};

/// A = U Q. Throws DomainError for singular A.
Polar polar_decompose(const Matrix& a);

/// Sylvester inertia. Throws NearSingularError when some |lambda| <= tol_pd.
Signature signature_of(const SymMatrix& a);

struct CanonicalCongruence {
  Matrix c;           // C A C^T = J_p
  std::size_t p = 0;
};

CanonicalCongruence congruence_to_canonical(const SymMatrix& a);

/// max|lambda| * tol::kPdRel for a computed spectrum.
double pd_threshold(const std::vector<double>& values);

}  // namespace tracemetric
