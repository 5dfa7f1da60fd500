#pragma once

#include <cstdint>
#include <limits>

#include <Eigen/Dense>

#include "smoothcond/polynomial.hpp"
#include "smoothcond/sphere_geom.hpp"

namespace smoothcond {

/// Counter-based random stream. The n-th output is a pure function of
/// (master_seed, stream_index, n), so any partition of work into streams is
/// reproducible regardless of how streams are scheduled.
///
/// Satisfies UniformRandomBitGenerator. Not thread-safe; each worker owns
/// its own stream.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, both variates used).
  double normal();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t key0_;
  std::uint64_t key1_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed orthogonal matrix.
struct Rotation {
  Eigen::MatrixXd matrix;

  int size() const { return static_cast<int>(matrix.rows()); }
  SpherePoint apply(const SpherePoint& x) const;
};

namespace sampling {

SpherePoint sample_uniform_sphere(int p, RngStream& rng);

/// Uniform point of the cap B_P(a, sigma). The angular radius is drawn by
/// inverting rho -> J_{p,p}(rho) / J_{p,p}(arcsin sigma).
SpherePoint sample_uniform_cap(const Cap& cap, RngStream& rng);

/// Solves J_{p,p}(rho) = target for rho in [0, alpha] by safeguarded
/// Newton iteration. Exposed for testing the inverse-CDF residual.
double invert_ball_profile(int p, double alpha, double target);

/// Unit vector orthogonal to `a`, uniform on that great (p-1)-sphere.
Eigen::VectorXd sample_tangent_direction(const SpherePoint& a, RngStream& rng);

Rotation sample_rotation(int n, RngStream& rng);

/// Gaussian form in the Weyl basis: the coefficient of X^alpha is
/// N(0, C(d, alpha)), which makes the law orthogonally invariant.
WeylPolynomial sample_weyl_polynomial(int n, int degree, RngStream& rng);

}  // namespace sampling
}  // namespace smoothcond
