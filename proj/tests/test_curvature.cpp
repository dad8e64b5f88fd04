#include <cmath>

#include "test_util.hpp"
#include "tracemetric/curvature.hpp"
#include "tracemetric/errors.hpp"
#include "tracemetric/sampling.hpp"

using namespace tracemetric;

namespace {

SymMatrix s12(std::size_t n) {
  Matrix m(n);
  m(0, 1) = m(1, 0) = 1.0 / std::sqrt(2.0);
  return SymMatrix(m);
}

}  // namespace

TEST(Riemann, Examples) {
  Rng rng(51);
  const ManifoldPoint k = random_spd(3, rng);
  const SymMatrix x = random_symmetric(3, rng), z = random_symmetric(3, rng), w = random_symmetric(3, rng);
  EXPECT_NEAR(riemann(k, x, x, z, w), 0.0, 1e-14);

  const ManifoldPoint i3(SymMatrix::identity(3));
  EXPECT_NEAR(riemann(i3, SymMatrix::diagonal({1.0, 2.0, 3.0}), SymMatrix::diagonal({-1.0, 0.5, 4.0}),
                      SymMatrix::diagonal({1.0, 2.0, 3.0}), SymMatrix::diagonal({-1.0, 0.5, 4.0})),
              0.0, 1e-15);

  const ManifoldPoint i2(SymMatrix::identity(2));
  const SymMatrix xd = (1.0 / std::sqrt(2.0)) * SymMatrix::diagonal({1.0, -1.0});
  EXPECT_NEAR(riemann(i2, xd, s12(2), xd, s12(2)), -0.5, 1e-15);
}

TEST(Riemann, TensorSymmetriesAndBianchi) {
  Rng rng(52);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint q = random_point(n, static_cast<std::size_t>(k) % (n + 1), rng);
    const SymMatrix x = random_symmetric(n, rng), y = random_symmetric(n, rng), z = random_symmetric(n, rng),
                    w = random_symmetric(n, rng);
    const double r = riemann(q, x, y, z, w);
    const double tol = 1e-12 * std::max(1.0, std::abs(r));
    ASSERT_NEAR(riemann(q, y, x, z, w), -r, tol);
    ASSERT_NEAR(riemann(q, x, y, w, z), -r, tol);
    ASSERT_NEAR(riemann(q, z, w, x, y), r, tol);
    ASSERT_NEAR(r + riemann(q, y, z, x, w) + riemann(q, z, x, y, w), 0.0, tol);
  }
}

TEST(Riemann, CongruenceInvariance) {
  Rng rng(53);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint q = random_point(n, static_cast<std::size_t>(k) % (n + 1), rng);
    const SymMatrix x = random_symmetric(n, rng), y = random_symmetric(n, rng), z = random_symmetric(n, rng),
                    w = random_symmetric(n, rng);
    const Matrix c = random_gl(n, rng);
    const double r = riemann(q, x, y, z, w);
    const double moved = riemann(ManifoldPoint(congruence(c, q.matrix())), congruence(c, x), congruence(c, y),
                                 congruence(c, z), congruence(c, w));
    ASSERT_LT(std::abs(moved - r), 1e-10 * std::max(1.0, std::abs(r)));
  }
}

TEST(Sectional, Examples) {
  const ManifoldPoint i3(SymMatrix::identity(3));
  EXPECT_NEAR(sectional(i3, SymMatrix::diagonal({1.0, 0.0, 0.0}), SymMatrix::diagonal({0.0, 2.0, -1.0})), 0.0, 1e-15);

  const ManifoldPoint i2(SymMatrix::identity(2));
  EXPECT_NEAR(sectional(i2, SymMatrix::diagonal({1.0, -1.0}), s12(2)), -0.5, 1e-15);
}

TEST(Sectional, SlpTwoIsHyperbolicPlane) {
  Rng rng(54);
  for (int k = 0; k < 100; ++k) {
    const ManifoldPoint q = random_unit_det_point(2, 2, rng);
    const SymMatrix x = project_tangent_sl(q, random_symmetric(2, rng)).value;
    const SymMatrix y = project_tangent_sl(q, random_symmetric(2, rng)).value;
    ASSERT_NEAR(sectional(q, x, y), -0.5, 1e-10);
  }
}

TEST(Sectional, NonPositiveOnSpd) {
  Rng rng(55);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint q = random_spd(n, rng);
    ASSERT_LE(sectional(q, random_symmetric(n, rng), random_symmetric(n, rng)), 1e-12);
  }
}

TEST(Sectional, DegeneratePlaneIsArgumentError) {
  Rng rng(56);
  const ManifoldPoint q = random_spd(3, rng);
  const SymMatrix x = random_symmetric(3, rng);
  EXPECT_THROW(sectional(q, x, x), ArgumentError);
  EXPECT_THROW(sectional(q, x, 2.0 * x), ArgumentError);
  EXPECT_THROW(sectional(q, x, SymMatrix::zeros(3)), ArgumentError);
}

TEST(Ricci, Examples) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const ManifoldPoint in(SymMatrix::identity(n));
    EXPECT_NEAR(ricci(in, SymMatrix::identity(n), SymMatrix::identity(n)), 0.0, 1e-14);
    Rng rng(57 + n);
    const SymMatrix x = project_tangent_sl(in, random_symmetric(n, rng)).value;
    const double want = -0.25 * static_cast<double>(n) * trace_of_product(x, x);
    EXPECT_NEAR(ricci(in, x, x), want, 1e-14);
    EXPECT_NEAR(ricci_from_riemann(in, x, x), want, 1e-13);
  }
}

TEST(Ricci, NegativeSemiDefiniteOnSpd) {
  Rng rng(58);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint q = random_spd(n, rng);
    const SymMatrix x = random_symmetric(n, rng);
    ASSERT_LE(ricci(q, x, x), 1e-12);
  }
}

TEST(Ricci, ClosedFormMatchesContraction) {
  Rng rng(59);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint q = random_point(n, static_cast<std::size_t>(k) % (n + 1), rng);
    const SymMatrix x = congruence(q.matrix(), random_symmetric(n, rng));
    const SymMatrix z = congruence(q.matrix(), random_symmetric(n, rng));
    const double closed = ricci(q, x, z);
    ASSERT_NEAR(ricci_from_riemann(q, x, z), closed, 1e-10 * std::max(1.0, std::abs(closed)));
  }
}

TEST(Ricci, KernelIsTheScaleDirection) {
  // Fuzzed search: shrink X toward the kernel of Ric(X, X) and check that
  // whatever reaches zero is proportional to Q.
  Rng rng(60);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const ManifoldPoint q = random_spd(n, rng);
    const double lambda = uniform(rng, -2.0, 2.0);
    const double eps = std::pow(10.0, -uniform(rng, 0.0, 12.0));
    const SymMatrix x = lambda * q.matrix() + eps * congruence(q.matrix(), random_symmetric(n, rng));
    const double r = ricci(q, x, x);
    const SymMatrix residue = x - (trace_of_product(q.inverse(), x) / static_cast<double>(n)) * q.matrix();
    if (std::abs(r) <= 1e-15) ASSERT_LT(residue.frobenius_norm(), 1e-6);
    if (residue.frobenius_norm() >= 1e-6) ASSERT_LT(r, 0.0);
  }
}

TEST(ScalarCurvature, ClosedForm) {
  EXPECT_DOUBLE_EQ(scalar_closed_form(2), -1.0);
  EXPECT_DOUBLE_EQ(scalar_closed_form(3), -15.0 / 4.0);
  EXPECT_DOUBLE_EQ(scalar_closed_form(4), -9.0);
  Rng rng(61);
  EXPECT_DOUBLE_EQ(scalar_at(random_point(5, 2, rng), ScalarMode::closed_form), -17.5);
}

TEST(ScalarCurvature, SummedAtIndefinitePoint) {
  Rng rng(62);
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(scalar_at(random_point(4, 2, rng), ScalarMode::summed), -9.0, 1e-8);
  }
}

TEST(EinsteinCheck, Examples) {
  Rng rng(63);
  const CurvatureReport at_identity = einstein_check(ManifoldPoint(SymMatrix::identity(3)), 50, 1);
  EXPECT_LT(at_identity.einstein_residual, 1e-14);
  EXPECT_NEAR(at_identity.scalar, -3.75, 1e-12);
  EXPECT_EQ(at_identity.samples, 50u);

  EXPECT_LT(einstein_check(random_unit_det_point(3, 3, rng), 200, 2).einstein_residual, 1e-10);
  EXPECT_LT(einstein_check(random_unit_det_point(3, 2, rng), 200, 3).einstein_residual, 1e-10);
}

TEST(EinsteinCheck, OffSliceIsDomainError) {
  EXPECT_THROW(einstein_check(ManifoldPoint(2.0 * SymMatrix::identity(3)), 10, 1), DomainError);
}
