#include "smoothcond/condition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "smoothcond/verify.hpp"

using namespace smoothcond;
using namespace smoothcond::condition;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Eigen::MatrixXd gaussian(int r, int c, RngStream& rng) {
  Eigen::MatrixXd a(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) a(i, j) = rng.normal();
  }
  return a;
}

// Distance from a 2x2 matrix to the double-eigenvalue quadric in closed form.
double quadric_distance(const Eigen::Matrix2d& a) {
  const double x = (a(0, 0) - a(1, 1)) / kSqrt2;
  const double u = (a(0, 1) + a(1, 0)) / kSqrt2;
  const double v = (a(0, 1) - a(1, 0)) / kSqrt2;
  return std::abs(std::hypot(x, u) - std::abs(v)) / kSqrt2;
}

}  // namespace

TEST(FrobeniusCondition, Examples) {
  EXPECT_NEAR(frobenius_condition(Eigen::MatrixXd::Identity(2, 2)), kSqrt2, 1e-15);
  Eigen::MatrixXd d(2, 2);
  d << 1, 0, 0, 0.5;
  EXPECT_NEAR(frobenius_condition(d), std::sqrt(5.0), 1e-14);
  Eigen::MatrixXd r(2, 2);
  r << 1, 2, 2, 4;
  EXPECT_EQ(frobenius_condition(r), INFINITY);
  EXPECT_THROW(frobenius_condition(Eigen::MatrixXd::Zero(2, 2)), std::domain_error);
  EXPECT_THROW(frobenius_condition(Eigen::MatrixXd::Ones(2, 3)), std::domain_error);
}

TEST(MoorePenroseCondition, Examples) {
  Eigen::MatrixXd a(3, 2);
  a << 2, 0, 0, 1, 0, 0;
  EXPECT_NEAR(moore_penrose_condition(a), std::sqrt(5.0), 1e-14);
  for (int m = 1; m <= 4; ++m) {
    EXPECT_NEAR(moore_penrose_condition(Eigen::MatrixXd::Identity(6, m)), std::sqrt(m), 1e-14);
  }
  Eigen::MatrixXd rank1(3, 2);
  rank1 << 1, 2, 2, 4, 3, 6;
  EXPECT_EQ(moore_penrose_condition(rank1), INFINITY);
  EXPECT_THROW(moore_penrose_condition(Eigen::MatrixXd::Ones(2, 3)), std::domain_error);
}

TEST(ConditionNumbers, ScaleInvariant) {
  RngStream rng(1, 0);
  const Eigen::MatrixXd a = gaussian(3, 3, rng);
  const Eigen::MatrixXd b = gaussian(4, 2, rng);
  for (double c : {1e-3, 0.7, 250.0}) {
    EXPECT_NEAR(frobenius_condition(c * a), frobenius_condition(a), 1e-10 * frobenius_condition(a));
    EXPECT_NEAR(moore_penrose_condition(c * b), moore_penrose_condition(b),
                1e-10 * moore_penrose_condition(b));
  }
  Eigen::MatrixXd s(2, 2);
  s << 2, 1, 0, -1;
  for (double c : {1e-3, 250.0}) {
    EXPECT_NEAR(eigenvalue_condition(c * s, 2 * c), eigenvalue_condition(s, 2), 1e-10);
  }
}

TEST(EigenvalueCondition, Examples) {
  Eigen::MatrixXd sym(3, 3);
  sym << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(eigenvalue_condition(sym, es.eigenvalues()[k]), 1.0, 1e-10);

  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 1;
  EXPECT_NEAR(eigenvalue_condition(a, 1.0), kSqrt2, 1e-12);

  Eigen::MatrixXd jordan(2, 2);
  jordan << 1, 1, 0, 1;
  EXPECT_EQ(eigenvalue_condition(jordan, 1.0), INFINITY);
  EXPECT_THROW(eigenvalue_condition(a, 0.5), std::domain_error);
}

TEST(DiscriminantOracle, BruteForceMatchesClosedForm) {
  RngStream rng(2, 0);
  for (int t = 0; t < 500; ++t) {
    Eigen::Matrix2d a;
    a << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    EXPECT_NEAR(verify::discriminant_distance_2x2(a), quadric_distance(a), 1e-9) << a;
  }
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  EXPECT_NEAR(quadric_distance(swap), 1.0, 1e-15);
  EXPECT_NEAR(verify::discriminant_distance_2x2(swap), 1.0, 1e-12);
}

TEST(NearestDoubleEigen, WitnessIsFeasibleAndTightOn2x2) {
  RngStream rng(3, 0);
  for (int t = 0; t < 200; ++t) {
    Eigen::Matrix2d a;
    a << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    const DoubleEigenWitness w = nearest_double_eigen(a, 4, 60, rng);
    EXPECT_NEAR(w.distance, (a - Eigen::Matrix2d(w.matrix)).norm(), 1e-12);
    // B - l I is nilpotent: its trace and determinant vanish.
    const Eigen::Matrix2d shifted = w.matrix - w.eigenvalue * Eigen::Matrix2d::Identity();
    EXPECT_NEAR(shifted.trace(), 0.0, 1e-10 * a.norm());
    EXPECT_NEAR(shifted.determinant(), 0.0, 1e-10 * a.squaredNorm());
    EXPECT_GE(w.distance, quadric_distance(a) - 1e-12);
    EXPECT_NEAR(w.distance, quadric_distance(a), 1e-6 * a.norm());
  }
}

TEST(NearestDoubleEigen, LargerMatricesGiveFeasibleWitnesses) {
  RngStream rng(4, 0);
  for (int n : {3, 4}) {
    const Eigen::MatrixXd a = gaussian(n, n, rng);
    const DoubleEigenWitness w = nearest_double_eigen(a, 4, 80, rng);
    const Eigen::MatrixXd shifted = w.matrix - w.eigenvalue * Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted);
    // A double eigenvalue leaves (B - l I)^2 with a two-dimensional kernel.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd2(shifted * shifted);
    EXPECT_LE(svd2.singularValues()[n - 2], 1e-8 * a.squaredNorm());
    EXPECT_NEAR(w.distance, (a - w.matrix).norm(), 1e-12);
  }
}

TEST(RealEigenConditionLower, CapAndScaling) {
  RngStream rng(5, 0);
  Eigen::MatrixXd jordan(3, 3);
  jordan << 1, 1, 0, 0, 1, 0, 0, 0, 3;
  // A defective eigenvalue is only resolved to about sqrt(eps).
  EXPECT_GT(real_eigen_condition_lower(jordan, 2, 40, rng), 1e7);
  EXPECT_EQ(real_eigen_condition_lower(Eigen::MatrixXd::Identity(3, 3), 2, 40, rng), kConditionCap);

  const Eigen::MatrixXd a = gaussian(3, 3, rng);
  RngStream r1(6, 0), r2(6, 0);
  const double base = real_eigen_condition_lower(a, 4, 60, r1);
  const double scaled = real_eigen_condition_lower(7.5 * a, 4, 60, r2);
  EXPECT_NEAR(scaled, base, 1e-6 * base);
}

TEST(RealEigenConditionLower, BoundsEigenvalueConditionOn2x2) {
  RngStream rng(7, 0);
  int checked = 0;
  while (checked < 200) {
    Eigen::Matrix2d a;
    a << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    const double tr = a.trace(), disc = tr * tr - 4 * a.determinant();
    if (disc <= 1e-6) continue;
    const double kappa_r = real_eigen_condition_lower(a, 4, 60, rng);
    for (double l : {(tr + std::sqrt(disc)) / 2, (tr - std::sqrt(disc)) / 2}) {
      EXPECT_LE(eigenvalue_condition(a, l), kappa_r * (1 + 1e-6) + 1e-6);
    }
    ++checked;
  }
}

TEST(EckartYoung, TruncationAndConditionProduct) {
  const auto r = verify::eckart_young(200, 2, 5, 9);
  EXPECT_TRUE(r.pass()) << r.table();
}

TEST(Wilkinson, InequalityOnRandom2x2) {
  const auto r = verify::wilkinson(300, 9);
  EXPECT_TRUE(r.pass()) << r.table();
}

TEST(TangentBasis, OrthonormalComplement) {
  const SpherePoint z = SpherePoint::normalized({0.2, -0.5, 0.8, 0.1});
  const Eigen::MatrixXd t = tangent_basis(z.coords());
  ASSERT_EQ(t.cols(), 3);
  EXPECT_LE((t.transpose() * t - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
  Eigen::Map<const Eigen::VectorXd> zv(z.coords().data(), 4);
  EXPECT_LE((t.transpose() * zv).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MuNorm, ClosedCases) {
  const auto r = verify::mu_closed_cases(100, 3);
  EXPECT_TRUE(r.pass()) << r.table();
}

TEST(MuNorm, DoubleZeroIsInfiniteAndNonZeroThrows) {
  // X1^2 has a double zero at e0.
  const PolySystem f({WeylPolynomial::monomial({0, 2})});
  EXPECT_EQ(mu_norm(f, SpherePoint::north(1)), INFINITY);
  const PolySystem g({WeylPolynomial::monomial({2, 0})});
  EXPECT_THROW(mu_norm(g, SpherePoint::north(1)), std::domain_error);
}

TEST(MuNorm, ScaleInvariant) {
  RngStream rng(8, 0);
  const SpherePoint z = sampling::sample_uniform_sphere(2, rng);
  const PolySystem f = force_zero(
      PolySystem({sampling::sample_weyl_polynomial(2, 2, rng), sampling::sample_weyl_polynomial(2, 3, rng)}), z);
  EXPECT_NEAR(mu_norm(f.scaled(0.01), z), mu_norm(f, z), 1e-10 * mu_norm(f, z));
}

TEST(MuNormRealLower, MaxOverSuppliedZeros) {
  std::vector<WeylPolynomial> polys;
  polys.push_back(WeylPolynomial::monomial({0, 1, 0}));
  polys.push_back(WeylPolynomial::monomial({0, 0, 1}));
  const PolySystem f(polys);
  const SpherePoint e0 = SpherePoint::north(2);
  const SpherePoint minus = SpherePoint::normalized({-1, 0, 0});
  EXPECT_NEAR(mu_norm_real_lower(f, {e0}), mu_norm(f, e0), 1e-15);
  EXPECT_NEAR(mu_norm_real_lower(f, {e0, minus}), kSqrt2, 1e-12);
  EXPECT_THROW(mu_norm_real_lower(f, {}), std::domain_error);
}

TEST(Cntr, RankDropWitnessAttainsEquality) {
  RngStream rng(9, 0);
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + t % 3;
    const SpherePoint z = sampling::sample_uniform_sphere(1, rng);
    PolySystem f = force_zero(PolySystem({sampling::sample_weyl_polynomial(1, d, rng)}), z);
    f = f.scaled(1 / weyl_norm(f));
    const PolySystem g = rank_drop_witness(f, z);
    EXPECT_NEAR(weyl_norm(g), 1.0, 1e-12);
    EXPECT_TRUE(cntr_witness_check(f, z, g));
    // The surgery removes the whole restricted derivative when n = 1, which
    // is the closest system with a double zero at z.
    EXPECT_NEAR(mu_norm(f, z) * projective_distance(f, g), 1.0, 1e-8);
  }
}

TEST(Cntr, RandomWitnessesPass) {
  const auto r = verify::cntr(300, {2, 3, 4}, 11);
  EXPECT_TRUE(r.pass()) << r.table();
}

TEST(Cntr, TwoEquationWitnesses) {
  RngStream rng(10, 0);
  for (int t = 0; t < 30; ++t) {
    const SpherePoint z = sampling::sample_uniform_sphere(2, rng);
    PolySystem f = force_zero(
        PolySystem({sampling::sample_weyl_polynomial(2, 2, rng), sampling::sample_weyl_polynomial(2, 3, rng)}), z);
    f = f.scaled(1 / weyl_norm(f));
    EXPECT_TRUE(cntr_witness_check(f, z, rank_drop_witness(f, z)));
  }
}

TEST(Cntr, MultipleZeroInputPassesByConvention) {
  PolySystem f({WeylPolynomial::monomial({0, 2})});
  const SpherePoint z = SpherePoint::north(1);
  EXPECT_TRUE(cntr_witness_check(f, z, f));
}

TEST(Cntr, RejectsInvalidWitness) {
  const PolySystem f({WeylPolynomial::monomial({1, 1}).compose_linear(Eigen::MatrixXd::Identity(2, 2) * std::pow(2.0, 0.25))});
  const SpherePoint z = SpherePoint::north(1);
  // g has a simple zero at z, so it is not a witness.
  const PolySystem g({WeylPolynomial::monomial({1, 1}).compose_linear(Eigen::MatrixXd::Identity(2, 2) * std::pow(2.0, 0.25))});
  EXPECT_THROW(cntr_witness_check(f, z, g), std::domain_error);
}
