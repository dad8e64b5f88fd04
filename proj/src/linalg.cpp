#include "tracemetric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tracemetric/errors.hpp"
#include "tracemetric/tolerances.hpp"

namespace tracemetric {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Zeroes a(p,q) by a rotation in the (p,q) plane, accumulating into v.
void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.order();
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

void require_positive_spectrum(const std::vector<double>& values, const char* where) {
  const double thr = pd_threshold(values);
  for (double l : values) {
    if (!(l > thr)) throw DomainError(std::string(where) + ": eigenvalue is not strictly positive");
  }
}

std::vector<double> mapped(const std::vector<double>& values, double (*f)(double)) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), f);
  return out;
}

}  // namespace

double pd_threshold(const std::vector<double>& values) {
  double m = 0.0;
  for (double l : values) m = std::max(m, std::abs(l));
  return tol::kPdRel * m;
}

SymEigen eig_sym(const SymMatrix& input) {
  const std::size_t n = input.order();
  Matrix a = input.matrix();
  Matrix v = Matrix::identity(n);
  const double target = tol::kJacobiRel * a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= tol::kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) {
      converged = true;
      break;
    }
    if (sweep == tol::kJacobiMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }
  if (!converged) throw IterationError("eig_sym: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymEigen out{Matrix(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    double sign = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v(i, src)) > 1e-10) {
        sign = v(i, src) > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

SymMatrix spectral_apply(const SymEigen& e, const std::vector<double>& f) {
  const std::size_t n = e.values.size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += e.vectors(i, k) * f[k] * e.vectors(j, k);
      r(i, j) = s;
      r(j, i) = s;
    }
  return SymMatrix::symmetrized(r);
}

Matrix expm(const Matrix& c) {
  const std::size_t n = c.order();
  const double norm = c.norm1();
  int squarings = 0;
  if (norm > tol::kExpmScaleNorm) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / tol::kExpmScaleNorm)));
  }
  const Matrix x = std::ldexp(1.0, -squarings) * c;

  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 60; ++k) {
    term = (term * x) * (1.0 / k);
    result += term;
    if (term.norm1() < tol::kExpmTermNorm) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Matrix log_principal(const Matrix& m) {
  const double scale = std::max(1.0, m.max_abs());
  if (m.asymmetry() > tol::kSymmetry * scale) {
    throw DomainError("log_principal: non-symmetric input requires an SPD witness");
  }
  const SymEigen e = eig_sym(SymMatrix::symmetrized(m));
  require_positive_spectrum(e.values, "log_principal");
  return spectral_apply(e, mapped(e.values, [](double l) { return std::log(l); }));
}

Matrix log_principal(const Matrix& m, const SymMatrix& witness) {
  const Matrix wm = witness.matrix() * m;
  if (wm.asymmetry() > tol::kRecon * std::max(1.0, wm.max_abs())) {
    throw DomainError("log_principal: witness does not symmetrize the input");
  }
  const SymEigen we = eig_sym(witness);
  require_positive_spectrum(we.values, "log_principal witness");
  const Matrix s = spectral_apply(we, mapped(we.values, [](double l) { return std::sqrt(l); }));
  const Matrix s_inv = spectral_apply(we, mapped(we.values, [](double l) { return 1.0 / std::sqrt(l); }));
  const SymEigen he = eig_sym(SymMatrix::symmetrized(s * m * s_inv));
  require_positive_spectrum(he.values, "log_principal");
  const Matrix log_h = spectral_apply(he, mapped(he.values, [](double l) { return std::log(l); }));
  return s_inv * log_h * s;
}

Matrix log_spd_pair(const SymMatrix& a, const SymMatrix& b) {
  const SymEigen ae = eig_sym(a);
  require_positive_spectrum(ae.values, "log_spd_pair (A)");
  const SymMatrix r = spectral_apply(ae, mapped(ae.values, [](double l) { return 1.0 / std::sqrt(l); }));
  const SymMatrix r_inv = spectral_apply(ae, mapped(ae.values, [](double l) { return std::sqrt(l); }));
  const SymEigen he = eig_sym(congruence(r, b));
  require_positive_spectrum(he.values, "log_spd_pair (B)");
  const Matrix log_h = spectral_apply(he, mapped(he.values, [](double l) { return std::log(l); }));
  return r.matrix() * log_h * r_inv.matrix();
}

Matrix power_frac(const Matrix& m, double r) { return expm(r * log_principal(m)); }

Matrix power_frac(const Matrix& m, const SymMatrix& witness, double r) {
  return expm(r * log_principal(m, witness));
}

SymMatrix spd_power(const SymMatrix& s, double r) {
  const SymEigen e = eig_sym(s);
  require_positive_spectrum(e.values, "spd_power");
  std::vector<double> f(e.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    f[k] = r == 0.5 ? std::sqrt(e.values[k]) : std::pow(e.values[k], r);
  }
  return spectral_apply(e, f);
}

SymMatrix sqrt_spd(const SymMatrix& a) { return spd_power(a, 0.5); }

Polar polar_decompose(const Matrix& a) {
  const double n_root = std::sqrt(static_cast<double>(a.order()));
  Matrix x = a;
  Matrix x_inv = x.inverse();
  if (!(x.frobenius_norm() * x_inv.frobenius_norm() < n_root / tol::kPdRel)) {
    throw DomainError("polar_decompose: matrix is singular");
  }
  // Scaled Newton iteration X <- (z X + X^-T / z) / 2.
  bool scaling = true;
  bool converged = false;
  for (int it = 0; it < 100 && !converged; ++it) {
    const double z = scaling ? std::sqrt(x_inv.frobenius_norm() / x.frobenius_norm()) : 1.0;
    const Matrix next = 0.5 * (z * x + (1.0 / z) * x_inv.transposed());
    const double step = (next - x).frobenius_norm() / next.frobenius_norm();
    x = next;
    if (step < 1e-2) scaling = false;
    converged = step <= 1e-9;
    x_inv = x.inverse();
  }
  // One more unscaled step to reach full precision after quadratic convergence.
  x = 0.5 * (x + x_inv.transposed());
  return Polar{x, SymMatrix::symmetrized(x.transposed() * a)};
}

Signature signature_of(const SymMatrix& a) {
  const SymEigen e = eig_sym(a);
  const double thr = pd_threshold(e.values);
  Signature s;
  for (double l : e.values) {
    if (!(std::abs(l) > thr)) throw NearSingularError("signature_of: matrix is numerically singular");
    if (l > 0.0)
      ++s.p;
    else
      ++s.q;
  }
  return s;
}

CanonicalCongruence congruence_to_canonical(const SymMatrix& a) {
  const std::size_t n = a.order();
  const SymEigen e = eig_sym(a);
  const double thr = pd_threshold(e.values);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(std::abs(e.values[k]) > thr)) throw NearSingularError("congruence_to_canonical: matrix is singular");
    if (e.values[k] > 0.0) order.push_back(k);
  }
  const std::size_t p = order.size();
  for (std::size_t k = 0; k < n; ++k)
    if (e.values[k] < 0.0) order.push_back(k);

  Matrix c(n);
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t k = order[row];
    const double scale = 1.0 / std::sqrt(std::abs(e.values[k]));
    for (std::size_t j = 0; j < n; ++j) c(row, j) = scale * e.vectors(j, k);
  }
  return CanonicalCongruence{c, p};
}

}  // namespace tracemetric
