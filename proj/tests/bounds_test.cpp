#include "smoothcond/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "smoothcond/sphere_geom.hpp"

using namespace smoothcond;
using namespace smoothcond::bounds;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double choose(int n, int k) {
  double c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Direct evaluation of the tube expression, fine for small p and d.
double naive_tube(int p, int d, double sigma, double eps) {
  const double r = eps / sigma;
  double s = 0;
  for (int k = 1; k <= p - 1; ++k) {
    s += choose(p, k) * std::pow(2.0 * d, k) * std::pow(1 + r, p - k) * std::pow(r, k);
  }
  const double ratio = sphere::sphere_volume(p) / sphere::sphere_volume(p - 1);
  return 4 * s + 2 * p * ratio * std::pow(2.0 * d, p) * std::pow(r, p);
}

}  // namespace

TEST(TailBound, HandExample) {
  // 4 (0.726 + 0.132) + 6 (pi/2) 8e-3
  const double hand = 4 * (0.726 + 0.132) + 6 * (kPi / 2) * 8e-3;
  EXPECT_NEAR(tail_bound(3, 1, 1.0, 10.0), hand, 1e-12);
  EXPECT_NEAR(tail_bound(3, 1, 1.0, 10.0), 3.5073982236861543, 1e-12);
}

TEST(TailBound, MatchesDirectSum) {
  for (int p : {1, 2, 3, 6, 10}) {
    for (int d : {1, 2, 5}) {
      for (double sigma : {0.1, 0.5, 1.0}) {
        for (double t : {1.0, 3.0, 100.0, 1e6}) {
          const double want = naive_tube(p, d, sigma, 1 / t);
          EXPECT_NEAR(tail_bound(p, d, sigma, t), want, 1e-12 * want);
        }
      }
    }
  }
}

TEST(TailBound, SubstitutionIdentityIsExact) {
  for (int p : {2, 7, 50}) {
    for (double t : {1.0, 2.5, 1e3}) {
      EXPECT_EQ(tail_bound(p, 3, 0.4, t), tube_ratio_bound(p, 3, 0.4, 1 / t));
    }
  }
}

TEST(TailBound, MonotoneAndVanishing) {
  double prev = INFINITY;
  for (double t = 1; t < 1e12; t *= 1.7) {
    const double b = tail_bound(4, 2, 0.5, t);
    EXPECT_LE(b, prev);
    prev = b;
  }
  EXPECT_LT(prev, 1e-9);
  for (int d = 1; d < 20; ++d) EXPECT_LE(tail_bound(4, d, 0.5, 50), tail_bound(4, d + 1, 0.5, 50));
}

TEST(TailBound, DomainErrors) {
  EXPECT_THROW(tail_bound(3, 1, 1.0, 0.5), std::domain_error);
  EXPECT_THROW(tail_bound(3, 1, 1.0, INFINITY), std::domain_error);
  EXPECT_THROW(tail_bound(0, 1, 1.0, 2.0), std::domain_error);
  EXPECT_THROW(tail_bound(3, 0, 1.0, 2.0), std::domain_error);
  EXPECT_THROW(tail_bound(3, 1, 0.0, 2.0), std::domain_error);
  EXPECT_THROW(tail_bound(3, 1, 1.1, 2.0), std::domain_error);
}

TEST(Bounds, PositiveAndFiniteForLargeParameters) {
  for (int p : {2, 100, 10000}) {
    for (int d : {1, 1000}) {
      for (double x : {1e-6, 0.5}) {
        const double b = tube_ratio_bound(p, d, 0.3, x);
        EXPECT_TRUE(std::isfinite(b) || b == INFINITY);
        EXPECT_GT(b, 0.0);
        // Extreme p may underflow to zero or overflow to inf, never go NaN.
        const double s = smooth_tube_bound(p, d, 0.3, x);
        EXPECT_TRUE(!std::isnan(s) && s >= 0.0);
      }
      EXPECT_TRUE(std::isfinite(expectation_bound(p, d, 0.3)));
      EXPECT_GE(curvature_integral_bound(p, d, 0.3, p / 2), 0.0);
    }
  }
  // Small enough eps keeps everything finite even at the top of the range.
  const double b = tube_ratio_bound(10000, 1000, 1.0, 1e-9);
  EXPECT_TRUE(std::isfinite(b));
  EXPECT_GT(b, 0.0);
}

TEST(ExpectationBound, Examples) {
  EXPECT_NEAR(expectation_bound(3, 2, 0.5), 2 * std::log(3) + 4 * std::log(2) + 5.5, 1e-13);
  EXPECT_NEAR(expectation_bound(3, 2, 0.5), 10.469813299576, 1e-12);
  EXPECT_NEAR(expectation_bound(5, 3, 1.0), 2 * std::log(5) + 2 * std::log(3) + 5.5, 1e-13);
  EXPECT_THROW(expectation_bound(1, 2, 0.5), std::domain_error);
}

TEST(ExpectationBound, CoarsenedMatrixForm) {
  for (int n = 2; n <= 100; ++n) {
    for (double sigma : {0.01, 0.3, 1.0}) {
      EXPECT_LE(expectation_bound(n * n - 1, n, sigma),
                6 * std::log(n) + 2 * std::log(1 / sigma) + 5.5);
    }
  }
}

TEST(TubeRatioBound, VanishesWithEps) {
  EXPECT_LT(tube_ratio_bound(3, 2, 1.0, 1e-12), 1e-9);
  EXPECT_THROW(tube_ratio_bound(3, 2, 1.0, 0.0), std::domain_error);
  EXPECT_THROW(tube_ratio_bound(3, 2, 1.0, 1.5), std::domain_error);
}

TEST(SmoothTubeBound, Examples) {
  EXPECT_NEAR(smooth_tube_bound(2, 2, 1.0, 0.1), 4 * kPi * 0.4 + 8 * kPi * 0.04, 1e-12);
  EXPECT_NEAR(smooth_tube_bound(2, 2, 1.0, 0.1), 6.0318578948924033, 1e-12);
  EXPECT_LT(smooth_tube_bound(4, 2, 1.0, 1e-12), 1e-9);
  EXPECT_THROW(smooth_tube_bound(1, 2, 1.0, 0.1), std::domain_error);
  EXPECT_NO_THROW(smooth_tube_bound(3, 3, 1.0, 0.1));
}

TEST(CurvatureIntegralBound, Examples) {
  for (int p : {2, 3, 6}) {
    EXPECT_NEAR(curvature_integral_bound(p, 1, 1.0, 0), 2 * sphere::sphere_volume(p - 1),
                1e-12 * sphere::sphere_volume(p - 1));
  }
  EXPECT_NEAR(curvature_integral_bound(3, 2, 0.5, 1), 8 * sphere::sphere_volume(2), 1e-11);
  EXPECT_NEAR(curvature_integral_bound(3, 2, 0.5, 1), 100.53096491487338, 1e-10);
  EXPECT_THROW(curvature_integral_bound(3, 2, 0.5, 3), std::domain_error);
}

TEST(LinearTailBound, ExampleAndThreshold) {
  const auto b = linear_tail_bound(2, 1, 1.0, 0.01);
  ASSERT_TRUE(b.has_value());
  EXPECT_NEAR(*b, (8 * kE + 4) * 2 * 0.01, 1e-14);
  EXPECT_NEAR(*b, 0.51492509255344720, 1e-12);
  EXPECT_FALSE(linear_tail_bound(2, 1, 1.0, 0.9).has_value());
  // Threshold sigma / ((1 + 2d)(p - 1)) = 1/3 here.
  EXPECT_TRUE(linear_tail_applies(2, 1, 1.0, 1.0 / 3));
  EXPECT_FALSE(linear_tail_applies(2, 1, 1.0, 1.0 / 3 + 1e-9));
  EXPECT_THROW(linear_tail_bound(2, 1, 1.0, -1.0), std::domain_error);
}

TEST(ProblemShape, Table) {
  auto shape = [](ProblemDescriptor d) { return problem_shape(d); };
  EXPECT_EQ(shape(MatrixInversion{3}).p, 8);
  EXPECT_EQ(shape(MatrixInversion{3}).d, 3);
  EXPECT_EQ(shape(MoorePenrose{3, 2}).p, 5);
  EXPECT_EQ(shape(MoorePenrose{3, 2}).d, 2);
  EXPECT_EQ(shape(EigenReal{3}).p, 8);
  EXPECT_EQ(shape(EigenReal{3}).d, 6);
  EXPECT_EQ(shape(EigenComplex{3}).p, 17);
  EXPECT_EQ(shape(EigenComplex{3}).d, 6);
  // n = 2, degrees (2, 3): C(4,2) + C(5,3) - 1 = 15; d = 2 n D^2 = 144.
  EXPECT_EQ(shape(PolySystemShape{{2, 3}}).p, 15);
  EXPECT_EQ(shape(PolySystemShape{{2, 3}}).d, 144);
  EXPECT_EQ(problem_name(MoorePenrose{3, 2}), "moore-penrose");
  EXPECT_THROW(shape(MoorePenrose{2, 3}), std::domain_error);
  EXPECT_THROW(shape(MatrixInversion{0}), std::domain_error);
  EXPECT_THROW(shape(PolySystemShape{{}}), std::domain_error);
}

TEST(ApplicationBound, ExpectationExamples) {
  const double ln2 = std::log(2.0), ln3 = std::log(3.0);
  EXPECT_NEAR(application_bound(MatrixInversion{2}, 1.0, 1.0, Mode::kExpectation), 6 * ln2 + 5.5, 1e-13);
  EXPECT_NEAR(application_bound(MatrixInversion{2}, 1.0, 1.0, Mode::kExpectation), 9.6588830833596715, 1e-12);
  EXPECT_NEAR(application_bound(MatrixInversion{3}, 1.0, 1.0, Mode::kExpectation), 12.091673732008658, 1e-12);
  EXPECT_NEAR(application_bound(MoorePenrose{3, 2}, 1.0, 1.0, Mode::kExpectation),
              2 * ln3 + 4 * ln2 + 5.5, 1e-13);
  EXPECT_NEAR(application_bound(EigenReal{2}, 1.0, 1.0, Mode::kExpectation), 8 * ln2 + 6, 1e-13);
  EXPECT_NEAR(application_bound(EigenReal{2}, 1.0, 1.0, Mode::kExpectation), 11.545177444479563, 1e-12);
  EXPECT_NEAR(application_bound(EigenComplex{2}, 0.5, 1.0, Mode::kExpectation),
              8 * ln2 + 2 * ln2 + 6 + 2 * ln2, 1e-13);
  // N = 15, D = 6, n = 2.
  EXPECT_NEAR(application_bound(PolySystemShape{{2, 3}}, 0.5, 1.0, Mode::kExpectation),
              2 * std::log(15.0) + 4 * std::log(6.0) + 2 * ln2 + 2 * ln2 + 7, 1e-12);
}

TEST(ApplicationBound, TailModeUsesProblemShape) {
  EXPECT_EQ(application_bound(MatrixInversion{2}, 0.5, 30.0, Mode::kTail), tail_bound(3, 2, 0.5, 30.0));
  EXPECT_EQ(application_bound(EigenComplex{2}, 0.5, 30.0, Mode::kTail), tail_bound(7, 2, 0.5, 30.0));
  EXPECT_EQ(application_bound(MoorePenrose{4, 3}, 1.0, 9.0, Mode::kTail), tail_bound(11, 3, 1.0, 9.0));
}
