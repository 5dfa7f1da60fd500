#pragma once

#include <span>
#include <vector>

namespace smoothcond {

/// A unit vector in R^{p+1}, i.e. a point of the sphere S^p.
class SpherePoint {
 public:
  SpherePoint() = default;

  /// Takes ownership of `coords`; throws std::domain_error unless the
  /// vector has at least two entries and unit norm within 1e-12.
  explicit SpherePoint(std::vector<double> coords);

  /// Normalizes `coords` onto the sphere. Throws on a zero vector.
  static SpherePoint normalized(std::vector<double> coords);

  /// The pole e_0 of S^p.
  static SpherePoint north(int p);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  std::vector<double> coords_;
};

/// Spherical cap B_P(a, sigma): the open geodesic ball of angular radius
/// arcsin(sigma) around `center`.
class Cap {
 public:
  Cap(SpherePoint center, double sigma);

  const SpherePoint& center() const { return center_; }
  double sigma() const { return sigma_; }
  double angular_radius() const { return angle_; }
  int dim() const { return center_.dim(); }

 private:
  SpherePoint center_;
  double sigma_;
  double angle_;
};

namespace sphere {

/// O_p, the p-dimensional volume of S^p.
double sphere_volume(int p);
double log_sphere_volume(int p);

/// J_{p,k}(alpha) = int_0^alpha sin^{k-1}(rho) cos^{p-k}(rho) drho.
/// Evaluated by trigonometric reduction formulas.
double j_integral(int p, int k, double alpha);

/// Same integral by adaptive Gauss-Kronrod quadrature. Cross-check only.
double j_integral_quadrature(int p, int k, double alpha);

/// int_0^alpha sin^a(rho) cos^b(rho) drho for a, b >= 0.
double trig_moment(int a, int b, double alpha);

/// Volume of the geodesic ball B_R(a, alpha) in S^p.
double ball_volume(int p, double alpha);

/// Volume of the eps-neighborhood of a great subsphere S^{p-k} in S^p.
double subsphere_tube_volume(int p, int k, double eps);

/// Kinematic constant C(p, i) for 0 <= i < p-1.
double kinematic_constant(int p, int i);

double riemannian_distance(const SpherePoint& x, const SpherePoint& y);
double projective_distance(const SpherePoint& x, const SpherePoint& y);

/// d_P(x, S^m) for the coordinate subsphere x_{m+1} = ... = x_p = 0.
double distance_to_subsphere(const SpherePoint& x, int m);

/// Binomial coefficient as a double, via log-Gamma.
double log_binomial(int n, int k);
double binomial(int n, int k);

}  // namespace sphere
}  // namespace smoothcond
