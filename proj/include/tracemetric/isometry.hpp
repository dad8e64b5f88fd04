#pragma once

// The isometry group of (P_n, g): congruences Gamma_C(A) = C A C^T, the
// inversion phi(A) = A^-1 and psi(A) = |det A|^{-2/n} A generate it, and every
// isometry has the normal form Gamma_M o phi^a o psi^b.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "tracemetric/manifold.hpp"

namespace tracemetric {

struct Congr {
  // Throws DomainError when c is singular.
  explicit Congr(Matrix c);
  Matrix c;
};
struct Inv {};
struct Psi {};

using Letter = std::variant<Congr, Inv, Psi>;

/// Composition of letters; letters.front() is applied last, so
/// {Inv, Congr(C)} is A |-> (C A C^T)^-1.
struct IsometryWord {
  std::vector<Letter> letters;
};

/// A |-> Gamma_M(phi^a(psi^b(A))). Values built through make_canonical carry
/// a normalized M (first non-negligible entry positive) and, for n = 2, b = 0.
struct CanonicalIsometry {
  Matrix m;
  int a = 0;
  int b = 0;
};

CanonicalIsometry make_canonical(Matrix m, int a, int b);
CanonicalIsometry identity_isometry(std::size_t n);

ManifoldPoint apply_inv(const ManifoldPoint& a);
ManifoldPoint apply_psi(const ManifoldPoint& a);

ManifoldPoint apply(const CanonicalIsometry& iso, const ManifoldPoint& a);
ManifoldPoint apply(const IsometryWord& word, const ManifoldPoint& a);

/// Rewrites a word to normal form using
///   Inv o Congr(C) = Congr(C^-T) o Inv,
///   Psi o Congr(C) = Congr(|det C|^{-2/n} C) o Psi,
///   Inv o Psi = Psi o Inv,  Inv^2 = Psi^2 = id,
/// and multiplying adjacent congruences. n is needed for the empty word.
CanonicalIsometry canonicalize(const IsometryWord& word, std::size_t n);

/// f o g.
CanonicalIsometry compose(const CanonicalIsometry& f, const CanonicalIsometry& g);

/// phi_Q = Gamma_Q o phi, the geodesic symmetry fixing Q.
CanonicalIsometry geodesic_symmetry_at(const ManifoldPoint& q);

/// Label of the connected component of Isom(P_n, g) holding iso. det_sign is
/// the sign of det M, pinned to +1 for odd n where Gamma_M = Gamma_{-M}
/// swaps it.
struct ComponentLabel {
  int det_sign = 1;
  int a = 0;
  int b = 0;
  friend bool operator==(const ComponentLabel&, const ComponentLabel&) = default;
};

ComponentLabel component_label(const CanonicalIsometry& iso);

/// 4 when n = 2 or n is odd, 8 otherwise.
std::size_t component_count(std::size_t n);

using IsometryOracle = std::function<SymMatrix(const SymMatrix&)>;

/// Recovers (M, a, b) from a black-box isometry of P_n:
///  1. read the action x |-> sigma x + beta on the R factor of P_n = SLP_n x R;
///  2. restrict to SLP_n, strip P = G(I)^{1/2} so H = Gamma_{P^-1} o G fixes I;
///  3. central-difference the differential of H at I and decide whether it
///     reverses the spectrum of an asymmetric trace-free diagonal (phi flag);
///  4. read the orthogonal U from H's action on a distinct-spectrum diagonal
///     and fix column signs on S^(1,j);
///  5. b = a xor [sigma = -1]; M = e^{beta/(2 sqrt n)} P U.
/// For n = 2, phi restricted to SLP_2 is a congruence, so the SL action is read
/// as Gamma_U and the phi flag comes from sigma alone.
/// The result is checked on a 50-point probe; a mismatch above tol::kIdentify,
/// or any non-SPD oracle output, raises NotAnIsometryError.
CanonicalIsometry identify(const IsometryOracle& oracle, std::size_t n, std::uint64_t seed);

/// Relative Frobenius mismatch between iso and oracle at a.
double probe_mismatch(const CanonicalIsometry& iso, const IsometryOracle& oracle, const ManifoldPoint& a);

}  // namespace tracemetric
