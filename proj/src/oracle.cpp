#include "tracemetric/oracle.hpp"

#include <cmath>
#include <limits>

#include "tracemetric/errors.hpp"
#include "tracemetric/linalg.hpp"

namespace tracemetric::oracle {

Chart::Chart(std::size_t n) : n_(n), dim_(n * (n + 1) / 2) {
  if (n < 2) throw ArgumentError("Chart: n must be >= 2");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      index_.emplace_back(i, j);
      Matrix f(n);
      f(i, j) = 1.0;
      f(j, i) = 1.0;
      fields_.emplace_back(f);
    }
}

std::size_t Chart::slot(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= n_) throw ArgumentError("Chart::slot: index out of range");
  // rows 0..i-1 hold n, n-1, ..., n-i+1 slots
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

Coords Chart::encode(const SymMatrix& a) const {
  if (a.order() != n_) throw ArgumentError("Chart::encode: order mismatch");
  Coords x(dim_);
  for (std::size_t s = 0; s < dim_; ++s) x[s] = a(index_[s].first, index_[s].second);
  return x;
}

SymMatrix Chart::decode(const Coords& x) const {
  if (x.size() != dim_) throw ArgumentError("Chart::decode: coordinate count mismatch");
  Matrix m(n_);
  for (std::size_t s = 0; s < dim_; ++s) {
    const auto [i, j] = index_[s];
    m(i, j) = x[s];
    m(j, i) = x[s];
  }
  return SymMatrix::symmetrized(m);
}

namespace {

using Real = long double;
using RealVec = std::vector<Real>;

// Dense row-major inverse by Gauss-Jordan with partial pivoting.
RealVec inverse_ld(RealVec a, std::size_t n) {
  RealVec inv(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0L;
  Real scale = 0.0L;
  for (Real v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (!(std::abs(a[piv * n + c]) > 1e-15L * scale)) throw DomainError("oracle: singular matrix in chart");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[c * n + j]);
        std::swap(inv[piv * n + j], inv[c * n + j]);
      }
    const Real d = a[c * n + c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c * n + j] /= d;
      inv[c * n + j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Real f = a[r * n + c];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[c * n + j];
        inv[r * n + j] -= f * inv[c * n + j];
      }
    }
  }
  return inv;
}

RealVec gram_ld(const Chart& chart, const RealVec& x) {
  const std::size_t n = chart.order();
  const std::size_t dim = chart.dim();
  RealVec a(n * n);
  for (std::size_t s = 0; s < dim; ++s) {
    const auto [i, j] = chart.entry(s);
    a[i * n + j] = x[s];
    a[j * n + i] = x[s];
  }
  const RealVec inv = inverse_ld(a, n);
  // pf[k] = A^{-1} F_k: F_k only touches rows/columns i and j.
  std::vector<RealVec> pf(dim, RealVec(n * n, 0.0L));
  for (std::size_t k = 0; k < dim; ++k) {
    const auto [i, j] = chart.entry(k);
    for (std::size_t r = 0; r < n; ++r) {
      pf[k][r * n + j] += inv[r * n + i];
      if (i != j) pf[k][r * n + i] += inv[r * n + j];
    }
  }
  RealVec g(dim * dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = k; l < dim; ++l) {
      Real v = 0.0L;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) v += pf[k][r * n + c] * pf[l][c * n + r];
      g[k * dim + l] = v;
      g[l * dim + k] = v;
    }
  return g;
}

// gamma[(k * dim + i) * dim + j] = Gamma^k_ij
RealVec christoffel_ld(const Chart& chart, const RealVec& x, Real h) {
  const std::size_t dim = chart.dim();
  std::vector<RealVec> dg;
  dg.reserve(dim);
  for (std::size_t m = 0; m < dim; ++m) {
    RealVec xp = x, xm = x;
    xp[m] += h;
    xm[m] -= h;
    const RealVec gp = gram_ld(chart, xp), gm = gram_ld(chart, xm);
    RealVec d(dim * dim);
    for (std::size_t e = 0; e < d.size(); ++e) d[e] = (gp[e] - gm[e]) / (2.0L * h);
    dg.push_back(std::move(d));
  }
  const RealVec ginv = inverse_ld(gram_ld(chart, x), dim);
  RealVec gamma(dim * dim * dim);
  RealVec lowered(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      for (std::size_t l = 0; l < dim; ++l)
        lowered[l] = 0.5L * (dg[i][j * dim + l] + dg[j][i * dim + l] - dg[l][i * dim + j]);
      for (std::size_t k = 0; k < dim; ++k) {
        Real s = 0.0L;
        for (std::size_t l = 0; l < dim; ++l) s += ginv[k * dim + l] * lowered[l];
        gamma[(k * dim + i) * dim + j] = s;
        gamma[(k * dim + j) * dim + i] = s;
      }
    }
  return gamma;
}

RealVec widen(const Coords& x) { return RealVec(x.begin(), x.end()); }

}  // namespace

Matrix metric_gram_at(const Chart& chart, const Coords& x) {
  if (x.size() != chart.dim()) throw ArgumentError("metric_gram_at: coordinate count mismatch");
  const RealVec g = gram_ld(chart, widen(x));
  Matrix out(chart.dim());
  for (std::size_t k = 0; k < chart.dim(); ++k)
    for (std::size_t l = 0; l < chart.dim(); ++l) out(k, l) = static_cast<double>(g[k * chart.dim() + l]);
  return out;
}

Coords Christoffel::contract(const Coords& u, const Coords& v) const {
  Coords out(dim_, 0.0);
  for (std::size_t k = 0; k < dim_; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i] == 0.0) continue;
      for (std::size_t j = 0; j < dim_; ++j) s += (*this)(k, i, j) * u[i] * v[j];
    }
    out[k] = s;
  }
  return out;
}

Christoffel christoffel_fd(const Chart& chart, const Coords& x, double h) {
  if (!(h > 0.0)) throw ArgumentError("christoffel_fd: step must be positive");
  if (x.size() != chart.dim()) throw ArgumentError("christoffel_fd: coordinate count mismatch");
  const std::size_t dim = chart.dim();
  const RealVec g = christoffel_ld(chart, widen(x), h);
  Christoffel gamma(dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) gamma(k, i, j) = static_cast<double>(g[(k * dim + i) * dim + j]);
  return gamma;
}

namespace {

struct Derivative {
  Coords dx;
  Coords dv;
};

// h * lmin / sqrt(lmax / lmin) over the absolute eigenvalues at x.
double scaled_step(const Chart& chart, const Coords& x, double h) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double l : eig_sym(chart.decode(x)).values) {
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  return h * lo * std::sqrt(lo / hi);
}

Derivative geodesic_rhs(const Chart& chart, const Coords& x, const Coords& v, double h, StepScale scale) {
  if (scale == StepScale::relative) h = scaled_step(chart, x, h);
  Coords acc = christoffel_fd(chart, x, h).contract(v, v);
  for (double& a : acc) a = -a;
  return Derivative{v, std::move(acc)};
}

Coords axpy(const Coords& x, double s, const Coords& d) {
  Coords r(x);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += s * d[k];
  return r;
}

void require_regular(const Chart& chart, const Coords& x) {
  const SymEigen e = eig_sym(chart.decode(x));
  const double thr = pd_threshold(e.values);
  for (double l : e.values) {
    if (!(std::abs(l) > thr)) throw IntegrationError("integrate_geodesic: trajectory reached a singular matrix");
  }
}

ODEState rk4_step(const Chart& chart, const ODEState& s, double dt, double h, StepScale scale) {
  const Derivative k1 = geodesic_rhs(chart, s.position, s.velocity, h, scale);
  const Derivative k2 =
      geodesic_rhs(chart, axpy(s.position, 0.5 * dt, k1.dx), axpy(s.velocity, 0.5 * dt, k1.dv), h, scale);
  const Derivative k3 =
      geodesic_rhs(chart, axpy(s.position, 0.5 * dt, k2.dx), axpy(s.velocity, 0.5 * dt, k2.dv), h, scale);
  const Derivative k4 = geodesic_rhs(chart, axpy(s.position, dt, k3.dx), axpy(s.velocity, dt, k3.dv), h, scale);
  ODEState next{s.position, s.velocity, s.t + dt};
  for (std::size_t k = 0; k < next.position.size(); ++k) {
    next.position[k] += dt / 6.0 * (k1.dx[k] + 2.0 * k2.dx[k] + 2.0 * k3.dx[k] + k4.dx[k]);
    next.velocity[k] += dt / 6.0 * (k1.dv[k] + 2.0 * k2.dv[k] + 2.0 * k3.dv[k] + k4.dv[k]);
  }
  return next;
}

}  // namespace

std::vector<ODEState> integrate_geodesic_path(const Chart& chart, const ODEState& start, double t_end, int steps,
                                              double h, StepScale scale) {
  if (steps < 1) throw ArgumentError("integrate_geodesic: steps must be >= 1");
  if (start.position.size() != chart.dim() || start.velocity.size() != chart.dim()) {
    throw ArgumentError("integrate_geodesic: state dimension does not match the chart");
  }
  const double dt = (t_end - start.t) / steps;
  std::vector<ODEState> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.push_back(start);
  try {
    require_regular(chart, start.position);
    for (int s = 0; s < steps; ++s) {
      ODEState next = rk4_step(chart, path.back(), dt, h, scale);
      require_regular(chart, next.position);
      path.push_back(std::move(next));
    }
  } catch (const DomainError& e) {
    throw IntegrationError(std::string("integrate_geodesic: ") + e.what());
  }
  path.back().t = t_end;
  return path;
}

ODEState integrate_geodesic(const Chart& chart, const ODEState& start, double t_end, int steps, double h,
                            StepScale scale) {
  return integrate_geodesic_path(chart, start, t_end, steps, h, scale).back();
}

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (double v : v_) m = std::max(m, std::abs(v));
  return m;
}

RiemannTensor riemann_fd(const Chart& chart, const Coords& x, double h) {
  if (!(h > 0.0)) throw ArgumentError("riemann_fd: step must be positive");
  if (x.size() != chart.dim()) throw ArgumentError("riemann_fd: coordinate count mismatch");
  const std::size_t dim = chart.dim();
  const RealVec xl = widen(x);
  const RealVec gamma = christoffel_ld(chart, xl, h);
  const RealVec g = gram_ld(chart, xl);
  auto G = [dim](const RealVec& t, std::size_t k, std::size_t i, std::size_t j) { return t[(k * dim + i) * dim + j]; };

  // dgamma[c] holds d_c Gamma
  std::vector<RealVec> dgamma;
  dgamma.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    RealVec xp = xl, xm = xl;
    xp[c] += h;
    xm[c] -= h;
    const RealVec gp = christoffel_ld(chart, xp, h), gm = christoffel_ld(chart, xm, h);
    RealVec d(gp.size());
    for (std::size_t e = 0; e < d.size(); ++e) d[e] = (gp[e] - gm[e]) / (2.0L * h);
    dgamma.push_back(std::move(d));
  }

  RealVec up(dim * dim * dim * dim);  // R^l_bcd
  auto U = [dim](std::size_t l, std::size_t b, std::size_t c, std::size_t d) {
    return ((l * dim + b) * dim + c) * dim + d;
  };
  for (std::size_t l = 0; l < dim; ++l)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t d = 0; d < dim; ++d) {
          Real v = G(dgamma[c], l, d, b) - G(dgamma[d], l, c, b);
          for (std::size_t m = 0; m < dim; ++m)
            v += G(gamma, l, c, m) * G(gamma, m, d, b) - G(gamma, l, d, m) * G(gamma, m, c, b);
          up[U(l, b, c, d)] = v;
        }

  RiemannTensor r(dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t d = 0; d < dim; ++d) {
          Real v = 0.0L;
          for (std::size_t l = 0; l < dim; ++l) v += g[a * dim + l] * up[U(l, b, c, d)];
          r(a, b, c, d) = static_cast<double>(v);
        }
  return r;
}

}  // namespace tracemetric::oracle
