#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "tracemetric/errors.hpp"
#include "tracemetric/manifold.hpp"
#include "tracemetric/sampling.hpp"

using namespace tracemetric;
using tracemetric::testing::MatrixNear;
using tracemetric::testing::rel_err;

namespace {

SymMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n);
  m(i, j) = 1.0;
  m(j, i) = 1.0;
  return SymMatrix(m);
}

double rel_diff(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST(MetricEval, Examples) {
  EXPECT_DOUBLE_EQ(metric_eval(ManifoldPoint(SymMatrix::identity(3)), unit(3, 0, 0), unit(3, 0, 0)), 1.0);
  EXPECT_DOUBLE_EQ(metric_eval(ManifoldPoint(2.0 * SymMatrix::identity(2)), SymMatrix::identity(2),
                               SymMatrix::identity(2)),
                   0.5);
}

TEST(MetricEval, TimeLikeOffDiagonalAtCanonicalPoint) {
  // S^(ij) = (E_ij + E_ji)/sqrt2 with i among the first p indices and j after.
  const std::size_t n = 4, p = 2;
  const ManifoldPoint jp(SymMatrix::canonical(n, p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = p; j < n; ++j) {
      const SymMatrix s = (1.0 / std::sqrt(2.0)) * unit(n, i, j);
      EXPECT_NEAR(metric_eval(jp, s, s), -1.0, 1e-15);
    }
}

TEST(MetricEval, CongruenceAndInversionInvariance) {
  Rng rng(21);
  int count = 0;
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t p = 0; p <= n; ++p)
      for (int k = 0; k < 56; ++k, ++count) {
        const ManifoldPoint a = random_point(n, p, rng);
        const SymMatrix v = random_symmetric(n, rng), w = random_symmetric(n, rng);
        const double base = metric_eval(a, v, w);
        const Matrix c = random_gl(n, rng);
        const double moved = metric_eval(ManifoldPoint(congruence(c, a.matrix())), congruence(c, v), congruence(c, w));
        ASSERT_LT(rel_diff(moved, base), 1e-10) << "n=" << n << " p=" << p;
        const ManifoldPoint inv(a.inverse());
        const SymMatrix dv = -congruence(a.inverse(), v), dw = -congruence(a.inverse(), w);
        ASSERT_LT(rel_diff(metric_eval(inv, dv, dw), base), 1e-10) << "n=" << n << " p=" << p;
      }
  EXPECT_GE(count, 1000);
}

TEST(ClassifyPoint, Examples) {
  const ManifoldPoint i3 = classify_point(SymMatrix::identity(3));
  EXPECT_EQ(i3.p(), 3u);
  EXPECT_TRUE(i3.on_unit_det_slice());
  EXPECT_TRUE(i3.in_slp());

  const ManifoldPoint m = classify_point(-SymMatrix::identity(3));
  EXPECT_EQ(m.p(), 0u);
  EXPECT_DOUBLE_EQ(m.det(), -1.0);
  EXPECT_TRUE(m.on_unit_det_slice());

  const ManifoldPoint d = classify_point(SymMatrix::diagonal({2.0, 1.0}));
  EXPECT_EQ(d.p(), 2u);
  EXPECT_FALSE(d.on_unit_det_slice());
  EXPECT_FALSE(d.in_slp());

  // det = -1 with p = 1 of 2: (-1)^(n-p) = -1, so on the slice.
  EXPECT_TRUE(classify_point(SymMatrix::diagonal({1.0, -1.0})).on_unit_det_slice());
  EXPECT_TRUE(classify_point(SymMatrix::diagonal({1.0, -1.0, -1.0})).on_unit_det_slice());
  EXPECT_FALSE(classify_point(SymMatrix::diagonal({2.0, -1.0})).on_unit_det_slice());
}

TEST(ClassifyPoint, SingularIsDomainError) {
  EXPECT_THROW(classify_point(SymMatrix{{1, 1}, {1, 1}}), DomainError);
  EXPECT_THROW(classify_point(SymMatrix::zeros(3)), NearSingularError);
}

TEST(OrthonormalBasis, SpdTwo) {
  const auto basis = orthonormal_basis(2, 2);
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis[0].matrix, SymMatrix::diagonal({1.0, 0.0}));
  EXPECT_EQ(basis[1].matrix, SymMatrix::diagonal({0.0, 1.0}));
  EXPECT_TRUE(MatrixNear(basis[2].matrix, (1.0 / std::sqrt(2.0)) * unit(2, 0, 1), 1e-16));
  for (const auto& e : basis) EXPECT_EQ(e.causal_sign, 1);
}

TEST(OrthonormalBasis, LorentzTwo) {
  const auto basis = orthonormal_basis(2, 1);
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis[0].causal_sign, 1);
  EXPECT_EQ(basis[1].causal_sign, 1);
  EXPECT_EQ(basis[2].causal_sign, -1);
}

TEST(OrthonormalBasis, GramIsSignatureMatrix) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t p = 0; p <= n; ++p) {
      const auto basis = orthonormal_basis(n, p);
      ASSERT_EQ(basis.size(), n * (n + 1) / 2);
      const ManifoldPoint jp(SymMatrix::canonical(n, p));
      std::size_t negatives = 0;
      for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
          const double g = metric_eval(jp, basis[a].matrix, basis[b].matrix);
          const double want = a == b ? basis[a].causal_sign : 0.0;
          ASSERT_NEAR(g, want, 1e-15) << "n=" << n << " p=" << p;
        }
        if (basis[a].causal_sign < 0) ++negatives;
      }
      EXPECT_EQ(negatives, p * (n - p));
    }
}

TEST(OrthonormalBasis, BadSignatureIsArgumentError) {
  EXPECT_THROW(orthonormal_basis(3, 4), ArgumentError);
  EXPECT_THROW(orthonormal_basis(1, 0), ArgumentError);
}

TEST(ProjectTangentSl, Examples) {
  const ManifoldPoint i3(SymMatrix::identity(3));
  const TangentVector z = project_tangent_sl(i3, SymMatrix::identity(3));
  EXPECT_TRUE(MatrixNear(z.value, SymMatrix::zeros(3), 1e-15));

  const TangentVector d = project_tangent_sl(ManifoldPoint(SymMatrix::identity(2)), SymMatrix::diagonal({3.0, 1.0}));
  EXPECT_TRUE(MatrixNear(d.value, SymMatrix::diagonal({1.0, -1.0}), 1e-15));
  EXPECT_TRUE(d.trace_free_at_base);

  Rng rng(22);
  const ManifoldPoint q = random_unit_det_point(3, 3, rng);
  const SymMatrix v = project_tangent_sl(q, random_symmetric(3, rng)).value;
  ASSERT_TRUE(is_trace_free_at(q, v));
  EXPECT_TRUE(MatrixNear(project_tangent_sl(q, v).value, v, 1e-14));
}

TEST(ProductSplit, Examples) {
  const auto [q0, x0] = product_split(ManifoldPoint(SymMatrix::identity(3)));
  EXPECT_TRUE(MatrixNear(q0.matrix(), SymMatrix::identity(3), 1e-15));
  EXPECT_DOUBLE_EQ(x0, 0.0);

  const auto [q1, x1] = product_split(ManifoldPoint(std::numbers::e * SymMatrix::identity(3)));
  EXPECT_TRUE(MatrixNear(q1.matrix(), SymMatrix::identity(3), 1e-15));
  EXPECT_NEAR(x1, std::sqrt(3.0), 1e-15);

  const auto [q2, x2] = product_split(ManifoldPoint(SymMatrix::diagonal({4.0, 1.0})));
  EXPECT_TRUE(MatrixNear(q2.matrix(), SymMatrix::diagonal({2.0, 0.5}), 1e-15));
  EXPECT_NEAR(x2, std::log(4.0) / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(q2.in_slp());
}

TEST(ProductSplit, NonSpdIsDomainError) {
  EXPECT_THROW(product_split(ManifoldPoint(SymMatrix::diagonal({1.0, -1.0}))), DomainError);
}

TEST(ProductJoin, Examples) {
  EXPECT_TRUE(MatrixNear(product_join(ManifoldPoint(SymMatrix::identity(3)), 0.0).matrix(), SymMatrix::identity(3),
                         0.0));
  Rng rng(23);
  const ManifoldPoint q = random_unit_det_point(3, 3, rng);
  EXPECT_TRUE(MatrixNear(product_join(q, 0.0).matrix(), q.matrix(), 0.0));
  for (int k = 0; k < 100; ++k) {
    const ManifoldPoint a = random_spd(2 + static_cast<std::size_t>(k % 4), rng);
    const auto [qa, xa] = product_split(a);
    ASSERT_LT(rel_err(product_join(qa, xa).matrix(), a.matrix()), 1e-10);
  }
}

TEST(ProductJoin, OffSliceIsDomainError) {
  EXPECT_THROW(product_join(ManifoldPoint(SymMatrix::diagonal({2.0, 1.0})), 0.3), DomainError);
}

TEST(ProductJoin, PullbackIsProductMetric) {
  Rng rng(24);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint q = random_unit_det_point(n, n, rng);
    const double x = uniform(rng, -2.0, 2.0);
    const SymMatrix w1 = project_tangent_sl(q, random_symmetric(n, rng)).value;
    const SymMatrix w2 = project_tangent_sl(q, random_symmetric(n, rng)).value;
    const double xi1 = uniform(rng, -1.0, 1.0), xi2 = uniform(rng, -1.0, 1.0);
    const ManifoldPoint image = product_join(q, x);
    const double lhs = metric_eval(image, product_pushforward(q, x, w1, xi1), product_pushforward(q, x, w2, xi2));
    const double rhs = metric_eval(q, w1, w2) + xi1 * xi2;
    ASSERT_LT(rel_diff(lhs, rhs), 1e-9);
  }
}

TEST(Negate, Examples) {
  const ManifoldPoint m = negate(ManifoldPoint(SymMatrix::identity(3)));
  EXPECT_EQ(m.matrix(), -SymMatrix::identity(3));
  EXPECT_EQ(m.p(), 0u);
  const ManifoldPoint j = negate(ManifoldPoint(SymMatrix::canonical(4, 1)));
  EXPECT_EQ(j.p(), 3u);
}

TEST(Negate, PreservesMetric) {
  Rng rng(25);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint a = random_point(n, static_cast<std::size_t>(k) % (n + 1), rng);
    const SymMatrix v = random_symmetric(n, rng), w = random_symmetric(n, rng);
    ASSERT_LT(std::abs(metric_eval(negate(a), -v, -w) - metric_eval(a, v, w)), 1e-12 * std::max(1.0, std::abs(metric_eval(a, v, w))));
  }
}
