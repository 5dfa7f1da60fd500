#include "smoothcond/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smoothcond {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  key0_ = mix64(master_seed ^ mix64(stream_index + kGolden));
  key1_ = mix64(key0_ + 0x632be59bd9b4e019ULL) ^ mix64(stream_index * kGolden + 1);
}

RngStream::result_type RngStream::operator()() {
  const std::uint64_t c = counter_++;
  // Two keyed rounds over the counter.
  return mix64(mix64(c * kGolden + key0_) ^ key1_);
}

double RngStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // 1 - uniform() lies in (0, 1], so the log is finite.
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

SpherePoint Rotation::apply(const SpherePoint& x) const {
  if (x.dim() + 1 != size()) throw std::domain_error("Rotation: dimension mismatch");
  Eigen::Map<const Eigen::VectorXd> v(x.coords().data(), size());
  Eigen::VectorXd y = matrix * v;
  return SpherePoint::normalized(std::vector<double>(y.data(), y.data() + y.size()));
}

namespace sampling {

SpherePoint sample_uniform_sphere(int p, RngStream& rng) {
  if (p < 1) throw std::domain_error("sample_uniform_sphere: p must be at least 1");
  std::vector<double> v(static_cast<std::size_t>(p) + 1);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 < 1e-300);
  return SpherePoint::normalized(std::move(v));
}

Eigen::VectorXd sample_tangent_direction(const SpherePoint& a, RngStream& rng) {
  const int n = a.dim() + 1;
  Eigen::Map<const Eigen::VectorXd> center(a.coords().data(), n);
  Eigen::VectorXd u(n);
  for (;;) {
    for (int i = 0; i < n; ++i) u[i] = rng.normal();
    u -= u.dot(center) * center;
    const double norm = u.norm();
    if (norm >= 1e-12) return u / norm;
  }
}

double invert_ball_profile(int p, double alpha, double target) {
  const double total = sphere::j_integral(p, p, alpha);
  if (target <= 0.0) return 0.0;
  if (target >= total) return alpha;
  const double tol = 1e-13 * total;

  double lo = 0.0;
  double hi = alpha;
  // J_{p,p}(rho) ~ rho^p / p near 0 gives a good starting point.
  double rho = std::min(alpha, std::pow(p * target, 1.0 / p));
  for (int iter = 0; iter < 200; ++iter) {
    const double f = sphere::j_integral(p, p, rho) - target;
    if (std::abs(f) <= tol) return rho;
    if (f > 0.0) {
      hi = rho;
    } else {
      lo = rho;
    }
    const double slope = std::pow(std::sin(rho), p - 1);
    double next = slope > 0.0 ? rho - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * alpha) return next;
    rho = next;
  }
  return rho;
}

SpherePoint sample_uniform_cap(const Cap& cap, RngStream& rng) {
  const int p = cap.dim();
  const double alpha = cap.angular_radius();
  const double total = sphere::j_integral(p, p, alpha);
  const double rho = invert_ball_profile(p, alpha, rng.uniform() * total);

  const int n = p + 1;
  Eigen::VectorXd u = sample_tangent_direction(cap.center(), rng);
  Eigen::Map<const Eigen::VectorXd> a(cap.center().coords().data(), n);
  Eigen::VectorXd z = std::cos(rho) * a + std::sin(rho) * u;
  return SpherePoint::normalized(std::vector<double>(z.data(), z.data() + n));
}

Rotation sample_rotation(int n, RngStream& rng) {
  if (n < 1) throw std::domain_error("sample_rotation: n must be at least 1");
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return Rotation{std::move(q)};
}

WeylPolynomial sample_weyl_polynomial(int n, int degree, RngStream& rng) {
  if (n < 0 || degree < 0) throw std::domain_error("sample_weyl_polynomial: bad shape");
  WeylPolynomial f(n, degree);
  MultiIndex alpha(static_cast<std::size_t>(n) + 1, 0);
  // Enumerate exponents with |alpha| = degree; the last one takes the rest.
  auto visit = [&](auto&& self, int pos, int left) -> void {
    if (pos == n) {
      alpha[pos] = left;
      f.add_term(alpha, std::sqrt(multinomial(alpha)) * rng.normal());
      return;
    }
    for (int e = left; e >= 0; --e) {
      alpha[pos] = e;
      self(self, pos + 1, left - e);
    }
  };
  visit(visit, 0, degree);
  return f;
}

}  // namespace sampling
}  // namespace smoothcond
