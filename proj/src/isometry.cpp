#include "tracemetric/isometry.hpp"

#include <algorithm>
#include <cmath>

#include "tracemetric/errors.hpp"
#include "tracemetric/sampling.hpp"
#include "tracemetric/tolerances.hpp"

namespace tracemetric {

namespace {

// Rotation W with psi = Gamma_W o phi on P_2.
Matrix rotation_w() { return Matrix{{0.0, -1.0}, {1.0, 0.0}}; }

Matrix sign_normalized(Matrix m) {
  const double thr = 1e-12 * m.max_abs();
  for (double v : m.data()) {
    if (std::abs(v) > thr) {
      if (v < 0.0) m *= -1.0;
      break;
    }
  }
  return m;
}

CanonicalIsometry canonical_of(const Letter& letter, std::size_t n) {
  return std::visit(
      [n](const auto& l) -> CanonicalIsometry {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Congr>) {
          return make_canonical(l.c, 0, 0);
        } else if constexpr (std::is_same_v<T, Inv>) {
          return make_canonical(Matrix::identity(n), 1, 0);
        } else {
          return make_canonical(Matrix::identity(n), 0, 1);
        }
      },
      letter);
}

std::size_t word_order(const IsometryWord& word, std::size_t fallback) {
  for (const Letter& l : word.letters) {
    if (const auto* c = std::get_if<Congr>(&l)) return c->c.order();
  }
  return fallback;
}

}  // namespace

Congr::Congr(Matrix m) : c(std::move(m)) {
  (void)c.inverse();  // throws DomainError when singular
}

CanonicalIsometry make_canonical(Matrix m, int a, int b) {
  a &= 1;
  b &= 1;
  if (m.order() == 2 && b == 1) {
    // Gamma_M phi^a psi = Gamma_M phi^a Gamma_W phi = Gamma_{M W} phi^{a+1}, since W^-T = W.
    m = m * rotation_w();
    a ^= 1;
    b = 0;
  }
  return CanonicalIsometry{sign_normalized(std::move(m)), a, b};
}

CanonicalIsometry identity_isometry(std::size_t n) { return make_canonical(Matrix::identity(n), 0, 0); }

ManifoldPoint apply_inv(const ManifoldPoint& a) { return ManifoldPoint(a.inverse()); }

ManifoldPoint apply_psi(const ManifoldPoint& a) {
  const double n = static_cast<double>(a.order());
  return ManifoldPoint(std::pow(std::abs(a.det()), -2.0 / n) * a.matrix());
}

ManifoldPoint apply(const CanonicalIsometry& iso, const ManifoldPoint& a) {
  if (!a.is_spd()) throw DomainError("apply: point is not positive definite");
  ManifoldPoint r = a;
  if (iso.b) r = apply_psi(r);
  if (iso.a) r = apply_inv(r);
  return ManifoldPoint(congruence(iso.m, r.matrix()));
}

ManifoldPoint apply(const IsometryWord& word, const ManifoldPoint& a) {
  if (!a.is_spd()) throw DomainError("apply: point is not positive definite");
  ManifoldPoint r = a;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    r = std::visit(
        [&r](const auto& l) -> ManifoldPoint {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, Congr>) {
            return ManifoldPoint(congruence(l.c, r.matrix()));
          } else if constexpr (std::is_same_v<T, Inv>) {
            return apply_inv(r);
          } else {
            return apply_psi(r);
          }
        },
        *it);
  }
  return r;
}

CanonicalIsometry compose(const CanonicalIsometry& f, const CanonicalIsometry& g) {
  // Gamma_M phi^a psi^b Gamma_N phi^c psi^d: carry Gamma_N leftwards.
  const std::size_t n = f.m.order();
  Matrix carried = g.m;
  if (f.b) carried *= std::pow(std::abs(carried.determinant()), -2.0 / static_cast<double>(n));
  if (f.a) carried = carried.inverse().transposed();
  return make_canonical(f.m * carried, f.a ^ g.a, f.b ^ g.b);
}

CanonicalIsometry canonicalize(const IsometryWord& word, std::size_t n) {
  n = word_order(word, n);
  CanonicalIsometry result = identity_isometry(n);
  for (const Letter& l : word.letters) result = compose(result, canonical_of(l, n));
  return result;
}

CanonicalIsometry geodesic_symmetry_at(const ManifoldPoint& q) {
  if (!q.is_spd()) throw DomainError("geodesic_symmetry_at: point is not positive definite");
  return make_canonical(q.matrix().matrix(), 1, 0);
}

ComponentLabel component_label(const CanonicalIsometry& iso) {
  const std::size_t n = iso.m.order();
  int det_sign = iso.m.determinant() > 0.0 ? 1 : -1;
  if (n % 2 == 1) det_sign = 1;
  return ComponentLabel{det_sign, iso.a, iso.b};
}

std::size_t component_count(std::size_t n) { return (n == 2 || n % 2 == 1) ? 4 : 8; }

double probe_mismatch(const CanonicalIsometry& iso, const IsometryOracle& oracle, const ManifoldPoint& a) {
  const SymMatrix expected = apply(iso, a).matrix();
  const SymMatrix got = oracle(a.matrix());
  return (got - expected).frobenius_norm() / expected.frobenius_norm();
}

// --- identification ----------------------------------------------------------

namespace {

constexpr double kFdStep = 1e-5;
constexpr std::size_t kProbePoints = 50;

class OracleCaller {
 public:
  OracleCaller(const IsometryOracle& oracle, std::size_t n) : oracle_(oracle), n_(n) {}

  ManifoldPoint operator()(const SymMatrix& a) const {
    try {
      SymMatrix out = oracle_(a);
      if (out.order() != n_) throw NotAnIsometryError("identify: oracle changed the matrix order");
      ManifoldPoint p(std::move(out));
      if (!p.is_spd()) throw NotAnIsometryError("identify: oracle left P_n");
      return p;
    } catch (const NotAnIsometryError&) {
      throw;
    } catch (const Error& e) {
      throw NotAnIsometryError(std::string("identify: oracle output rejected: ") + e.what());
    }
  }

 private:
  const IsometryOracle& oracle_;
  std::size_t n_;
};

double product_coordinate(const ManifoldPoint& p) { return product_split(p).second; }

// Unit-determinant part of an SPD matrix.
SymMatrix sl_part(const ManifoldPoint& p) {
  return std::pow(p.det(), -1.0 / static_cast<double>(p.order())) * p.matrix();
}

SymMatrix sym_exp(const SymMatrix& x) {
  const SymEigen e = eig_sym(x);
  std::vector<double> f(e.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::exp(e.values[k]);
  return spectral_apply(e, f);
}

double spectrum_gap(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

CanonicalIsometry identify(const IsometryOracle& oracle, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("identify: n must be >= 2");
  const OracleCaller call(oracle, n);
  const double rn = std::sqrt(static_cast<double>(n));
  const SymMatrix eye = SymMatrix::identity(n);

  // 1. Action on the R factor: x(L(A)) = sigma x(A) + beta.
  const double beta = product_coordinate(call(eye));
  const double slope = (product_coordinate(call(std::exp(1.0) * eye)) - beta) / rn;
  int sigma = 0;
  if (std::abs(slope - 1.0) < tol::kIdentify) sigma = 1;
  if (std::abs(slope + 1.0) < tol::kIdentify) sigma = -1;
  if (sigma == 0) throw NotAnIsometryError("identify: oracle does not act isometrically on the determinant line");

  // 2. H = Gamma_{P^-1} o G on SLP_n, fixing I.
  const SymMatrix p_root = sqrt_spd(sl_part(call(eye)));
  const Matrix p_inv = p_root.matrix().inverse();
  auto h = [&](const SymMatrix& q) { return congruence(p_inv, sl_part(call(q))); };
  auto dh = [&](const SymMatrix& x) {
    const SymMatrix fwd = h(sym_exp(kFdStep * x));
    const SymMatrix bwd = h(sym_exp(-kFdStep * x));
    return (1.0 / (2.0 * kFdStep)) * (fwd - bwd);
  };

  // 3. Does dH reverse an asymmetric spectrum?
  int a_sl = 0;
  if (n >= 3) {
    std::vector<double> d0(n, -1.0);
    d0[0] = static_cast<double>(n) - 1.0;
    const SymMatrix x0 = (1.0 / SymMatrix::diagonal(d0).frobenius_norm()) * SymMatrix::diagonal(d0);
    const std::vector<double> got = eig_sym(dh(x0)).values;
    const std::vector<double> plus = eig_sym(x0).values;
    std::vector<double> minus(plus);
    for (double& v : minus) v = -v;
    a_sl = spectrum_gap(got, minus) < spectrum_gap(got, plus) ? 1 : 0;
  }
  const double orient = a_sl ? -1.0 : 1.0;

  // 4. U from U D0 U^T, column signs from S^(1,j).
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<double>(i) - 0.5 * static_cast<double>(n - 1);
  const SymEigen ue = eig_sym(orient * dh(SymMatrix::diagonal(d)));
  Matrix u = ue.vectors;
  const double r2 = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 1; j < n; ++j) {
    Matrix s(n);
    s(0, j) = r2;
    s(j, 0) = r2;
    const SymMatrix image = orient * dh(SymMatrix(s));
    Matrix pair(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) pair(r, c) = r2 * (u(r, 0) * u(c, j) + u(r, j) * u(c, 0));
    if (trace_of_product(image, pair) < 0.0) {
      for (std::size_t r = 0; r < n; ++r) u(r, j) = -u(r, j);
    }
  }

  // 5. Assemble.
  int a = a_sl;
  int b = a_sl ^ (sigma == -1 ? 1 : 0);
  Matrix m = std::exp(beta / (2.0 * rn)) * (p_root.matrix() * u);
  if (n == 2) {
    a = sigma == -1 ? 1 : 0;
    b = 0;
    if (a) m = m * rotation_w();
  }
  CanonicalIsometry result = make_canonical(std::move(m), a, b);

  // 6. Verify.
  Rng rng(seed);
  for (std::size_t k = 0; k < kProbePoints; ++k) {
    const ManifoldPoint probe = random_spd(n, rng);
    const SymMatrix expected = apply(result, probe).matrix();
    const SymMatrix got = call(probe.matrix()).matrix();
    if ((got - expected).frobenius_norm() > tol::kIdentify * expected.frobenius_norm()) {
      throw NotAnIsometryError("identify: recovered isometry disagrees with the oracle on the probe");
    }
  }
  return result;
}

}  // namespace tracemetric
