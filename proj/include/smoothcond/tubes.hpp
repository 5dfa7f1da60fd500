#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "smoothcond/parallel.hpp"
#include "smoothcond/polynomial.hpp"
#include "smoothcond/sampling.hpp"
#include "smoothcond/sphere_geom.hpp"
#include "smoothcond/stats.hpp"

namespace smoothcond {

/// Zero set on S^2 of one homogeneous polynomial in X_0, X_1, X_2.
///
/// Distances come from a precomputed mesh of curve points, a few projected
/// Newton steps along the curve, and a bracketed 1-D search on the curve. Every candidate is a point of
/// the curve (to ~1e-14), so the returned distance is an upper bound of the
/// true distance; its excess over the true value is O(spacing^2 * curvature).
class CurveVariety {
 public:
  static constexpr int kDefaultMeshPoints = 4096;
  static constexpr int kDefaultNewtonSteps = 2;

  explicit CurveVariety(WeylPolynomial f, int mesh_points = kDefaultMeshPoints,
                        int newton_steps = kDefaultNewtonSteps);

  const WeylPolynomial& polynomial() const { return f_; }
  int degree() const { return f_.degree(); }
  /// Unit points on the curve; empty if the curve has no real points.
  const std::vector<Eigen::Vector3d>& mesh() const { return mesh_; }
  /// Largest nearest-neighbour chord between mesh points.
  double mesh_spacing() const { return spacing_; }

  /// d_P(x, curve); 1 for an empty curve.
  double distance(const SpherePoint& x) const;

 private:
  Eigen::Vector3d project(Eigen::Vector3d c) const;
  double value(const Eigen::Vector3d& c) const;
  Eigen::Vector3d grad(const Eigen::Vector3d& c) const;

  WeylPolynomial f_;
  int newton_steps_;
  double scale_;
  std::vector<Eigen::Vector3d> mesh_;
  double spacing_ = 0.0;
};

struct Subsphere {
  int p;  // ambient S^p
  int m;  // the coordinate subsphere S^m, 0 <= m <= p-1
};

/// Singular n x n matrices, seen on S^{n^2 - 1} (row-major coordinates).
struct Determinant {
  int n;
};

class Variety;
using VarietyUnion = std::vector<Variety>;

/// An ill-posed set W on S^p with a distance oracle.
class Variety {
 public:
  Variety(Subsphere s);
  Variety(Determinant d);
  Variety(std::shared_ptr<const CurveVariety> c);
  explicit Variety(VarietyUnion members);

  /// Ambient sphere dimension p.
  int ambient_dim() const;
  /// Degree bound d such that W lies in the zero set of forms of degree <= d.
  /// For unions this is the product degree: max member degree times count.
  int degree() const;
  /// Largest member degree (equals degree() for non-unions).
  int max_member_degree() const;
  /// Whether distance() is exact, or an upper bound from a mesh search.
  bool exact_distance() const;

  /// d_P(x, W).
  double distance(const SpherePoint& x) const;

  std::string kind() const;

 private:
  std::variant<Subsphere, Determinant, std::shared_ptr<const CurveVariety>,
               std::shared_ptr<const VarietyUnion>>
      v_;
};

namespace tubes {

/// sigma_min of the n x n matrix with row-major entries x.
double smallest_singular_value(std::span<const double> x, int n);

/// Maps fn(z, rng) over `samples` uniform cap points. Block b draws from
/// RngStream(seed, b); output is in sample order.
template <class Fn>
std::vector<double> map_cap_samples(const Cap& cap, std::uint64_t samples, std::uint64_t seed,
                                    int workers, Fn fn) {
  auto blocks = run_blocks<std::vector<double>>(
      samples, workers, [&](std::uint64_t b, std::uint64_t, std::uint64_t count) {
        RngStream rng(seed, b);
        std::vector<double> out;
        out.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
          const SpherePoint z = sampling::sample_uniform_cap(cap, rng);
          out.push_back(fn(z, rng));
        }
        return out;
      });
  std::vector<double> all;
  all.reserve(samples);
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  return all;
}

/// Distances d_P(z, V) for uniform points z of the cap.
std::vector<double> cap_distances(const Variety& v, const Cap& cap, std::uint64_t samples,
                                  std::uint64_t seed, int workers = 1);

/// Fraction of cap points with d_P(z, V) < eps, with a 99% Clopper-Pearson
/// interval.
McEstimate estimate_tube_cap_ratio(const Variety& v, const Cap& cap, double eps,
                                   std::uint64_t samples, std::uint64_t seed, int workers = 1);

/// Same estimator for several radii, sharing one set of samples.
std::vector<McEstimate> estimate_tube_cap_ratios(const Variety& v, const Cap& cap,
                                                 const std::vector<double>& eps,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 int workers = 1);

/// Closed-form ratio vol(T_P(S^m, eps) cap B) / vol(B) for a hemisphere B
/// (sigma = 1) centred on the subsphere S^m, m = p - 1 - (k - 1).
double subsphere_hemisphere_ratio(int p, int m, double eps);

// Geodesic sphere M_alpha = boundary of B_R(q, alpha) in S^p: all principal
// curvatures equal cot(alpha).

/// K_{M_alpha, i} = C(p-1, i) cot^i(alpha).
double geodesic_sphere_curvature(int p, double alpha, int i);
/// vol_{p-1} M_alpha = O_{p-1} sin^{p-1}(alpha).
double geodesic_sphere_volume(int p, double alpha);
/// mu_i(M_alpha) = C(p-1, i) O_{p-1} sin^{p-i-1}(alpha) cos^i(alpha).
double geodesic_sphere_mu(int p, double alpha, int i);

struct KinematicCheck {
  double lhs;           // mu_i(M_alpha)
  double analytic_rhs;  // C(p,i) times the closed-form slice average
  McEstimate mc_rhs;    // C(p,i) times the Monte Carlo slice average
  bool analytic_ok;     // |lhs - analytic_rhs| <= 1e-10 |lhs|
  bool mc_ok;           // |mc_rhs - lhs| <= 3 half-widths
};

/// Checks the kinematic formula for geodesic spheres: the slice of M_alpha(z)
/// by S^{i+1} has mu_i = O_i cos^i(delta) with cos(alpha) = cos(rho) cos(delta),
/// rho = d_R(z, S^{i+1}), and is empty when rho >= alpha.
/// The bounded integrand is turned into a Bernoulli draw so the interval is
/// an exact Clopper-Pearson interval scaled by C(p,i) O_i.
KinematicCheck verify_kinematic(int p, int i, double alpha, std::uint64_t samples,
                                std::uint64_t seed, int workers = 1);

/// Volume of B_R(q, theta) for theta in [0, pi].
double cap_volume(int p, double theta);

/// vol of the band B_R(q, alpha + beta) minus B_R(q, alpha - beta), i.e. the
/// normal beta-tube around M_alpha, for 0 < beta < alpha, alpha + beta <= pi.
double band_volume(int p, double alpha, double beta);

struct WeylTubeCheck {
  double lhs;
  double rhs;
  bool pass;
  double relative_gap;  // (rhs - lhs) / rhs
};

/// band_volume(p, alpha, beta) <= 2 sum_i J_{p,i+1}(beta) mu_i(M_alpha).
WeylTubeCheck verify_weyl_tube_bound(int p, double alpha, double beta);

}  // namespace tubes
}  // namespace smoothcond
