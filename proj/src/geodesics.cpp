#include "tracemetric/geodesics.hpp"

#include <algorithm>
#include <cmath>

#include "tracemetric/errors.hpp"
#include "tracemetric/tolerances.hpp"

namespace tracemetric {

namespace {

void require_spd(const ManifoldPoint& a, const char* where) {
  if (!a.is_spd()) throw DomainError(std::string(where) + ": endpoint is not positive definite");
}

// A^{1/2}, A^{-1/2} and the eigenvalues of A^{-1/2} B A^{-1/2}.
struct Whitened {
  SymMatrix root;
  SymMatrix inv_root;
  SymEigen inner;
};

Whitened whiten(const ManifoldPoint& a, const ManifoldPoint& b) {
  const SymEigen ae = eig_sym(a.matrix());
  std::vector<double> r(ae.values.size()), ri(ae.values.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = std::sqrt(ae.values[k]);
    ri[k] = 1.0 / r[k];
  }
  SymMatrix inv_root = spectral_apply(ae, ri);
  SymEigen inner = eig_sym(congruence(inv_root, b.matrix()));
  for (double mu : inner.values) {
    if (!(mu > 0.0)) throw DomainError("geodesics: A^-1 B has a non-positive eigenvalue");
  }
  return Whitened{spectral_apply(ae, r), std::move(inv_root), std::move(inner)};
}

}  // namespace

Geodesic::Geodesic(ManifoldPoint start, const SymMatrix& velocity)
    : start_(std::move(start)), direction_(start_.inverse().matrix() * velocity.matrix()) {
  restricted_to_sl_ = std::abs(direction_.trace()) <= tol::kTraceRel * velocity.frobenius_norm();
}

ManifoldPoint geodesic_at(const Geodesic& geo, double t) {
  return ManifoldPoint(SymMatrix::symmetrized(geo.start().matrix().matrix() * expm(t * geo.direction())));
}

SymMatrix geodesic_velocity(const Geodesic& geo, double t) {
  const Matrix e = expm(t * geo.direction());
  return SymMatrix::symmetrized(geo.start().matrix().matrix() * e * geo.direction());
}

Geodesic geodesic_between(const ManifoldPoint& a, const ManifoldPoint& b) {
  return Geodesic(a, log_map(a, b).value);
}

ManifoldPoint geodesic_point(const ManifoldPoint& a, const ManifoldPoint& b, double t) {
  require_spd(a, "geodesic_point");
  require_spd(b, "geodesic_point");
  const Whitened w = whiten(a, b);
  std::vector<double> f(w.inner.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double mu = w.inner.values[k];
    f[k] = t == 0.5 ? std::sqrt(mu) : std::pow(mu, t);
  }
  return ManifoldPoint(congruence(w.root, spectral_apply(w.inner, f)));
}

TangentVector log_map(const ManifoldPoint& a, const ManifoldPoint& b) {
  require_spd(a, "log_map");
  require_spd(b, "log_map");
  const Whitened w = whiten(a, b);
  std::vector<double> f(w.inner.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::log(w.inner.values[k]);
  SymMatrix v = congruence(w.root, spectral_apply(w.inner, f));
  const bool free = is_trace_free_at(a, v);
  return TangentVector{a, std::move(v), free};
}

double distance(const ManifoldPoint& a, const ManifoldPoint& b) {
  require_spd(a, "distance");
  require_spd(b, "distance");
  // Eigenvalues >= 1 of A^-1/2 B A^-1/2 and of B^-1/2 A B^-1/2 (reciprocal
  // spectra); each log is taken from the side where it is non-negative.
  std::vector<double> sq;
  for (const Whitened& w : {whiten(a, b), whiten(b, a)}) {
    for (double mu : w.inner.values) {
      if (mu >= 1.0) sq.push_back(std::log(mu) * std::log(mu));
    }
  }
  // Eigenvalues at exactly 1 appear on both sides and contribute zero either way.
  std::sort(sq.begin(), sq.end());
  double s = 0.0;
  for (double v : sq) s += v;
  return std::sqrt(s);
}

ManifoldPoint geometric_mean(const ManifoldPoint& a, const ManifoldPoint& b) {
  return geodesic_point(a, b, 0.5);
}

SymMatrix congruence_transporter(const ManifoldPoint& a, const ManifoldPoint& b) {
  require_spd(a, "congruence_transporter");
  return geometric_mean(ManifoldPoint(a.inverse()), b).matrix();
}

}  // namespace tracemetric
