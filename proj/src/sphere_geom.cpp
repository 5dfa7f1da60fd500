#include "smoothcond/sphere_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace smoothcond {

namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  require(coords_.size() >= 2, "SpherePoint: dimension p must be at least 1");
  const double norm = std::sqrt(squared_norm(coords_));
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    throw std::domain_error("SpherePoint: coordinates are not unit length (norm " +
                            std::to_string(norm) + ")");
  }
}

SpherePoint SpherePoint::normalized(std::vector<double> coords) {
  const double norm = std::sqrt(squared_norm(coords));
  require(norm > 0.0 && std::isfinite(norm), "SpherePoint: cannot normalize a zero vector");
  for (double& x : coords) x /= norm;
  return SpherePoint(std::move(coords));
}

SpherePoint SpherePoint::north(int p) {
  require(p >= 1, "SpherePoint: dimension p must be at least 1");
  std::vector<double> c(static_cast<std::size_t>(p) + 1, 0.0);
  c[0] = 1.0;
  return SpherePoint(std::move(c));
}

Cap::Cap(SpherePoint center, double sigma) : center_(std::move(center)), sigma_(sigma) {
  require(sigma > 0.0 && sigma <= 1.0, "Cap: sigma must lie in (0, 1]");
  angle_ = std::asin(sigma);
}

namespace sphere {

double log_sphere_volume(int p) {
  require(p >= 0, "sphere_volume: p must be nonnegative");
  const double h = 0.5 * (p + 1);
  return std::log(2.0) + h * std::log(std::numbers::pi) - std::lgamma(h);
}

double sphere_volume(int p) { return std::exp(log_sphere_volume(p)); }

double log_binomial(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, "binomial: need 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, "binomial: need 0 <= k <= n");
  if (n <= 60) {
    k = std::min(k, n - k);
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return std::round(r);
  }
  return std::exp(log_binomial(n, k));
}

namespace {

// int_0^alpha sin^a, alpha in [0, pi/2].
double sine_power_integral(int a, double alpha) {
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  if (a == 0) return alpha;
  const double half = std::sin(0.5 * alpha);
  if (a == 1) return 2.0 * half * half;

  if (s <= 0.9) {
    // Substituting u = sin(rho): int_0^s u^a (1-u^2)^{-1/2} du, expanded
    // termwise; all terms are positive.
    const double s2 = s * s;
    double coeff = 1.0;
    double power = std::pow(s, a + 1);
    double sum = 0.0;
    for (int j = 0; j < 2000; ++j) {
      const double term = coeff * power / (a + 2 * j + 1);
      sum += term;
      if (term <= 1e-18 * sum) break;
      coeff *= (2.0 * j + 1.0) / (2.0 * j + 2.0);
      power *= s2;
    }
    return sum;
  }

  // Near pi/2 the upward reduction loses at most a factor 1/s^2 per step.
  double prev = (a % 2 == 0) ? alpha : 2.0 * half * half;
  for (int m = (a % 2 == 0) ? 2 : 3; m <= a; m += 2) {
    prev = -std::pow(s, m - 1) * c / m + (m - 1.0) / m * prev;
  }
  return prev;
}

}  // namespace

double trig_moment(int a, int b, double alpha) {
  require(a >= 0 && b >= 0, "trig_moment: exponents must be nonnegative");
  require(alpha >= 0.0 && alpha <= std::numbers::pi / 2 + 1e-15,
          "trig_moment: alpha must lie in [0, pi/2]");
  alpha = std::min(alpha, std::numbers::pi / 2);
  if (alpha == 0.0) return 0.0;
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  const double sa1 = std::pow(s, a + 1);

  // Raise the cosine exponent from 0 or 1 to b; every step adds a
  // nonnegative boundary term.
  double value;
  int m;
  if (b % 2 == 1) {
    value = sa1 / (a + 1);
    m = 3;
  } else {
    value = sine_power_integral(a, alpha);
    m = 2;
  }
  for (; m <= b; m += 2) {
    value = sa1 * std::pow(c, m - 1) / (a + m) + (m - 1.0) / (a + m) * value;
  }
  return value;
}

double j_integral(int p, int k, double alpha) {
  require(p >= 1 && k >= 1 && k <= p, "j_integral: need 1 <= k <= p");
  require(alpha >= 0.0 && alpha <= std::numbers::pi / 2 + 1e-15,
          "j_integral: alpha must lie in [0, pi/2]");
  return trig_moment(k - 1, p - k, alpha);
}

double j_integral_quadrature(int p, int k, double alpha) {
  require(p >= 1 && k >= 1 && k <= p, "j_integral: need 1 <= k <= p");
  require(alpha >= 0.0 && alpha <= std::numbers::pi / 2 + 1e-15,
          "j_integral: alpha must lie in [0, pi/2]");
  if (alpha == 0.0) return 0.0;
  auto integrand = [p, k](double rho) {
    return std::pow(std::sin(rho), k - 1) * std::pow(std::cos(rho), p - k);
  };
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(integrand, 0.0, std::min(alpha, std::numbers::pi / 2),
                                              15, 1e-12);
}

double ball_volume(int p, double alpha) {
  require(p >= 1, "ball_volume: p must be at least 1");
  require(alpha > 0.0 && alpha <= std::numbers::pi / 2 + 1e-15,
          "ball_volume: alpha must lie in (0, pi/2]");
  return sphere_volume(p - 1) * j_integral(p, p, alpha);
}

double subsphere_tube_volume(int p, int k, double eps) {
  require(p >= 1 && k >= 1 && k <= p, "subsphere_tube_volume: need 1 <= k <= p");
  require(eps > 0.0 && eps <= 1.0, "subsphere_tube_volume: eps must lie in (0, 1]");
  return sphere_volume(p - k) * sphere_volume(k - 1) * j_integral(p, k, std::asin(eps));
}

double kinematic_constant(int p, int i) {
  require(p >= 2 && i >= 0 && i < p - 1, "kinematic_constant: need p >= 2 and 0 <= i < p-1");
  const double log_c = std::log(p - i - 1.0) + log_binomial(p - 1, i) + log_sphere_volume(p - 1) +
                       log_sphere_volume(p) - log_sphere_volume(i) - log_sphere_volume(i + 1) -
                       log_sphere_volume(p - i - 2);
  return std::exp(log_c);
}

double riemannian_distance(const SpherePoint& x, const SpherePoint& y) {
  require(x.dim() == y.dim(), "distance: dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < x.coords().size(); ++i) dot += x[i] * y[i];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

double projective_distance(const SpherePoint& x, const SpherePoint& y) {
  // sin of the angle, computed from the antisymmetric part for accuracy
  // near 0 and pi: |x ^ y|^2 = sum_{i<j} (x_i y_j - x_j y_i)^2.
  require(x.dim() == y.dim(), "distance: dimension mismatch");
  const std::size_t n = x.coords().size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = x[i] * y[j] - x[j] * y[i];
      s += w * w;
    }
  }
  return std::min(1.0, std::sqrt(s));
}

double distance_to_subsphere(const SpherePoint& x, int m) {
  require(m >= 0 && m <= x.dim() - 1, "distance_to_subsphere: need 0 <= m <= p-1");
  double s = 0.0;
  for (std::size_t i = static_cast<std::size_t>(m) + 1; i < x.coords().size(); ++i) s += x[i] * x[i];
  return std::min(1.0, std::sqrt(s));
}

}  // namespace sphere
}  // namespace smoothcond
