#include "tracemetric/sampling.hpp"

#include <cmath>

#include "tracemetric/errors.hpp"

namespace tracemetric {

double uniform(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

SymMatrix random_symmetric(std::size_t n, Rng& rng, double range) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = uniform(rng, -range, range);
      m(i, j) = v;
      m(j, i) = v;
    }
  return SymMatrix(m);
}

Matrix random_gl(std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(rng, -1.0, 1.0);
    const SymEigen e = eig_sym(SymMatrix::symmetrized(m.transposed() * m));
    if (e.values.front() >= 0.05 * 0.05 * e.values.back()) return m;
  }
}

Matrix random_orthogonal(std::size_t n, Rng& rng) { return polar_decompose(random_gl(n, rng)).u; }

ManifoldPoint random_spd(std::size_t n, Rng& rng) {
  return ManifoldPoint(congruence(random_gl(n, rng), SymMatrix::identity(n)));
}

ManifoldPoint random_point(std::size_t n, std::size_t p, Rng& rng) {
  return ManifoldPoint(congruence(random_gl(n, rng), SymMatrix::canonical(n, p)));
}

ManifoldPoint random_unit_det_point(std::size_t n, std::size_t p, Rng& rng) {
  const ManifoldPoint a = random_point(n, p, rng);
  const double scale = std::pow(std::abs(a.det()), -1.0 / static_cast<double>(n));
  return ManifoldPoint(scale * a.matrix());
}

SymMatrix random_tangent(const ManifoldPoint& k, Rng& rng, double range) {
  if (!k.is_spd()) throw DomainError("random_tangent: base point must be positive definite");
  return congruence(sqrt_spd(k.matrix()).matrix(), random_symmetric(k.order(), rng, range));
}

}  // namespace tracemetric
