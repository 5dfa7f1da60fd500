#include "smoothcond/tubes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

namespace smoothcond {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

constexpr int kCircleSamples = 256;

}  // namespace

CurveVariety::CurveVariety(WeylPolynomial f, int mesh_points, int newton_steps)
    : f_(std::move(f)), newton_steps_(newton_steps) {
  require(f_.num_vars() == 3, "CurveVariety: polynomial must be in X_0, X_1, X_2");
  require(f_.degree() >= 1, "CurveVariety: degree must be at least 1");
  require(mesh_points >= 8 && newton_steps >= 0, "CurveVariety: invalid mesh parameters");
  scale_ = weyl_norm(f_);
  require(scale_ > 0.0, "CurveVariety: zero polynomial");

  // Scan three pencils of great circles (those through +-e_k) for sign
  // changes of f; a great circle meets the curve in at most 2d points.
  const int per_pencil = std::max(4, mesh_points / (3 * 2 * f_.degree()));
  for (int axis = 0; axis < 3; ++axis) {
    const Eigen::Vector3d e = Eigen::Vector3d::Unit(axis);
    const Eigen::Vector3d u = Eigen::Vector3d::Unit((axis + 1) % 3);
    const Eigen::Vector3d w = Eigen::Vector3d::Unit((axis + 2) % 3);
    for (int j = 0; j < per_pencil; ++j) {
      // Offset by half a step so pencils do not share circles.
      const double phi = std::numbers::pi * (j + 0.5) / per_pencil;
      const Eigen::Vector3d v = std::cos(phi) * u + std::sin(phi) * w;
      auto point = [&](double t) -> Eigen::Vector3d { return std::cos(t) * e + std::sin(t) * v; };
      // Half circle suffices: the zero set is symmetric under x -> -x.
      const double step = std::numbers::pi / kCircleSamples;
      double t0 = 0.0;
      double f0 = value(point(t0));
      for (int s = 1; s <= kCircleSamples; ++s) {
        const double t1 = s * step;
        const double f1 = value(point(t1));
        if (f0 == 0.0) {
          mesh_.push_back(project(point(t0)));
        } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
          double lo = t0;
          double hi = t1;
          double flo = f0;
          for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = value(point(mid));
            if ((fm < 0.0) == (flo < 0.0)) {
              lo = mid;
              flo = fm;
            } else {
              hi = mid;
            }
          }
          mesh_.push_back(project(point(0.5 * (lo + hi))));
        }
        t0 = t1;
        f0 = f1;
      }
    }
  }

  for (std::size_t a = 0; a < mesh_.size(); ++a) {
    double nearest = 2.0;
    for (std::size_t b = 0; b < mesh_.size(); ++b) {
      if (a == b) continue;
      // Chord to the nearer of +-b.
      const double c = std::abs(mesh_[a].dot(mesh_[b]));
      nearest = std::min(nearest, std::sqrt(std::max(0.0, 2.0 - 2.0 * c)));
    }
    if (mesh_.size() > 1) spacing_ = std::max(spacing_, nearest);
  }
}

double CurveVariety::value(const Eigen::Vector3d& c) const {
  return f_.evaluate(std::span<const double>(c.data(), 3));
}

Eigen::Vector3d CurveVariety::grad(const Eigen::Vector3d& c) const {
  return f_.gradient(std::span<const double>(c.data(), 3));
}

// Newton iteration for f = 0 along the spherical gradient.
Eigen::Vector3d CurveVariety::project(Eigen::Vector3d c) const {
  c.normalize();
  for (int it = 0; it < 30; ++it) {
    const double fc = value(c);
    if (std::abs(fc) <= 1e-15 * scale_) break;
    Eigen::Vector3d g = grad(c);
    g -= g.dot(c) * c;
    const double g2 = g.squaredNorm();
    if (g2 <= 1e-300) break;
    c -= (fc / g2) * g;
    c.normalize();
  }
  return c;
}

double CurveVariety::distance(const SpherePoint& x) const {
  require(x.dim() == 2, "CurveVariety: points must lie on S^2");
  if (mesh_.empty()) return 1.0;
  const Eigen::Vector3d q(x[0], x[1], x[2]);
  // Nearest mesh point in the projective sense maximizes |<q, c>|.
  std::size_t best = 0;
  double best_dot = -1.0;
  for (std::size_t i = 0; i < mesh_.size(); ++i) {
    const double d = std::abs(q.dot(mesh_[i]));
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  Eigen::Vector3d c = mesh_[best];
  if (c.dot(q) < 0.0) c = -c;
  double dist = q.cross(c).norm();

  for (int step = 0; step < newton_steps_; ++step) {
    Eigen::Vector3d t = c.cross(grad(c));
    const double tn = t.norm();
    if (tn <= 1e-300) break;
    t /= tn;
    // Slide along the curve tangent to the foot of q on that great circle.
    const double s = std::atan2(q.dot(t), q.dot(c));
    Eigen::Vector3d next = project(std::cos(s) * c + std::sin(s) * t);
    if (std::abs(value(next)) > 1e-10 * scale_) break;
    if (next.dot(q) < 0.0) next = -next;
    const double d = q.cross(next).norm();
    if (d < dist) {
      dist = d;
      c = next;
    } else {
      break;
    }
  }

  // Polish with a bracketed search along the curve, charted by projecting
  // the tangent great circle at c back onto the curve.
  Eigen::Vector3d t = c.cross(grad(c));
  if (t.norm() > 1e-300 && spacing_ > 0.0) {
    t.normalize();
    bool on_curve = true;
    auto chart = [&](double s) {
      const Eigen::Vector3d y = project(std::cos(s) * c + std::sin(s) * t);
      if (std::abs(value(y)) > 1e-10 * scale_) on_curve = false;
      return y;
    };
    auto objective = [&](double s) { return q.cross(chart(s)).norm(); };
    const double reach = 2.0 * spacing_;
    const auto [s, d] = boost::math::tools::brent_find_minima(objective, -reach, reach, 52);
    if (on_curve && d < dist) {
      const Eigen::Vector3d y = chart(s);
      if (on_curve) dist = q.cross(y).norm();
    }
  }
  return std::min(1.0, dist);
}

Variety::Variety(Subsphere s) : v_(s) {
  require(s.p >= 1 && s.m >= 0 && s.m <= s.p - 1, "Subsphere: need 0 <= m <= p-1");
}

Variety::Variety(Determinant d) : v_(d) { require(d.n >= 1, "Determinant: n must be positive"); }

Variety::Variety(std::shared_ptr<const CurveVariety> c) : v_(std::move(c)) {
  require(std::get<2>(v_) != nullptr, "Variety: null curve");
}

Variety::Variety(VarietyUnion members)
    : v_(std::make_shared<const VarietyUnion>(std::move(members))) {
  const auto& m = *std::get<3>(v_);
  require(!m.empty(), "Variety: empty union");
  for (const auto& v : m) {
    require(v.ambient_dim() == m.front().ambient_dim(), "Variety: union members differ in dimension");
  }
}

int Variety::ambient_dim() const {
  struct Visitor {
    int operator()(const Subsphere& s) const { return s.p; }
    int operator()(const Determinant& d) const { return d.n * d.n - 1; }
    int operator()(const std::shared_ptr<const CurveVariety>&) const { return 2; }
    int operator()(const std::shared_ptr<const VarietyUnion>& u) const {
      return u->front().ambient_dim();
    }
  };
  return std::visit(Visitor{}, v_);
}

int Variety::max_member_degree() const {
  struct Visitor {
    int operator()(const Subsphere&) const { return 1; }
    int operator()(const Determinant& d) const { return d.n; }
    int operator()(const std::shared_ptr<const CurveVariety>& c) const { return c->degree(); }
    int operator()(const std::shared_ptr<const VarietyUnion>& u) const {
      int d = 0;
      for (const auto& v : *u) d = std::max(d, v.max_member_degree());
      return d;
    }
  };
  return std::visit(Visitor{}, v_);
}

int Variety::degree() const {
  if (const auto* u = std::get_if<3>(&v_)) {
    return max_member_degree() * static_cast<int>((*u)->size());
  }
  return max_member_degree();
}

bool Variety::exact_distance() const {
  struct Visitor {
    bool operator()(const Subsphere&) const { return true; }
    bool operator()(const Determinant&) const { return true; }
    bool operator()(const std::shared_ptr<const CurveVariety>&) const { return false; }
    bool operator()(const std::shared_ptr<const VarietyUnion>& u) const {
      return std::all_of(u->begin(), u->end(), [](const Variety& v) { return v.exact_distance(); });
    }
  };
  return std::visit(Visitor{}, v_);
}

std::string Variety::kind() const {
  static const char* names[] = {"subsphere", "determinant", "curve", "union"};
  return names[v_.index()];
}

double Variety::distance(const SpherePoint& x) const {
  require(x.dim() == ambient_dim(), "Variety: point dimension does not match the variety");
  struct Visitor {
    const SpherePoint& x;
    double operator()(const Subsphere& s) const { return sphere::distance_to_subsphere(x, s.m); }
    double operator()(const Determinant& d) const {
      return std::min(1.0, tubes::smallest_singular_value(x.coords(), d.n));
    }
    double operator()(const std::shared_ptr<const CurveVariety>& c) const { return c->distance(x); }
    double operator()(const std::shared_ptr<const VarietyUnion>& u) const {
      double best = 1.0;
      for (const auto& v : *u) best = std::min(best, v.distance(x));
      return best;
    }
  };
  return std::visit(Visitor{x}, v_);
}

namespace tubes {

double smallest_singular_value(std::span<const double> x, int n) {
  require(static_cast<int>(x.size()) == n * n, "smallest_singular_value: size mismatch");
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      x.data(), n, n);
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues().minCoeff();
}

std::vector<double> cap_distances(const Variety& v, const Cap& cap, std::uint64_t samples,
                                  std::uint64_t seed, int workers) {
  require(cap.dim() == v.ambient_dim(), "cap_distances: cap and variety dimensions differ");
  return map_cap_samples(cap, samples, seed, workers,
                         [&v](const SpherePoint& z, RngStream&) { return v.distance(z); });
}

std::vector<McEstimate> estimate_tube_cap_ratios(const Variety& v, const Cap& cap,
                                                 const std::vector<double>& eps,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 int workers) {
  require(samples >= 1, "estimate_tube_cap_ratio: need at least one sample");
  for (double e : eps) require(e > 0.0 && e <= 1.0, "estimate_tube_cap_ratio: eps must lie in (0, 1]");
  const std::vector<double> dist = cap_distances(v, cap, samples, seed, workers);
  std::vector<McEstimate> out;
  out.reserve(eps.size());
  for (double e : eps) {
    const auto hits = static_cast<std::uint64_t>(
        std::count_if(dist.begin(), dist.end(), [e](double d) { return d < e; }));
    out.push_back(proportion_estimate(hits, samples, seed));
  }
  return out;
}

McEstimate estimate_tube_cap_ratio(const Variety& v, const Cap& cap, double eps,
                                   std::uint64_t samples, std::uint64_t seed, int workers) {
  return estimate_tube_cap_ratios(v, cap, {eps}, samples, seed, workers).front();
}

double subsphere_hemisphere_ratio(int p, int m, double eps) {
  require(p >= 1 && m >= 0 && m <= p - 1, "subsphere_hemisphere_ratio: need 0 <= m <= p-1");
  // Reflecting x_0 -> -x_0 preserves the tube, so half of it lies in the
  // hemisphere around any centre on S^m.
  return sphere::subsphere_tube_volume(p, p - m, eps) / sphere::sphere_volume(p);
}

double geodesic_sphere_curvature(int p, double alpha, int i) {
  require(p >= 2 && i >= 0 && i <= p - 1, "geodesic_sphere: need p >= 2, 0 <= i <= p-1");
  require(alpha > 0.0 && alpha <= std::numbers::pi / 2 + 1e-15, "geodesic_sphere: alpha in (0, pi/2]");
  return sphere::binomial(p - 1, i) * std::pow(std::cos(alpha) / std::sin(alpha), i);
}

double geodesic_sphere_volume(int p, double alpha) {
  require(p >= 2, "geodesic_sphere: need p >= 2");
  require(alpha > 0.0 && alpha <= std::numbers::pi / 2 + 1e-15, "geodesic_sphere: alpha in (0, pi/2]");
  return sphere::sphere_volume(p - 1) * std::pow(std::sin(alpha), p - 1);
}

double geodesic_sphere_mu(int p, double alpha, int i) {
  require(p >= 2 && i >= 0 && i <= p - 1, "geodesic_sphere: need p >= 2, 0 <= i <= p-1");
  require(alpha > 0.0 && alpha <= std::numbers::pi / 2 + 1e-15, "geodesic_sphere: alpha in (0, pi/2]");
  // cos(pi/2) rounds to ~6e-17; the equator has zero curvature exactly.
  const double c = alpha == std::numbers::pi / 2 ? 0.0 : std::cos(alpha);
  return sphere::binomial(p - 1, i) * sphere::sphere_volume(p - 1) *
         std::pow(std::sin(alpha), p - i - 1) * std::pow(c, i);
}

KinematicCheck verify_kinematic(int p, int i, double alpha, std::uint64_t samples,
                                std::uint64_t seed, int workers) {
  require(p >= 2 && i >= 0 && i < p - 1, "verify_kinematic: need 0 <= i < p-1");
  require(alpha > 0.0 && alpha <= std::numbers::pi / 2 + 1e-15, "verify_kinematic: alpha in (0, pi/2]");
  require(samples >= 1, "verify_kinematic: need at least one sample");

  const double lhs = geodesic_sphere_mu(p, alpha, i);
  const double constant = sphere::kinematic_constant(p, i);
  const double cos_a = alpha == std::numbers::pi / 2 ? 0.0 : std::cos(alpha);
  const double analytic =
      constant *
      std::exp(sphere::log_sphere_volume(i) + sphere::log_sphere_volume(i + 1) +
               sphere::log_sphere_volume(p - i - 2) - sphere::log_sphere_volume(p)) *
      std::pow(cos_a, i) * std::pow(std::sin(alpha), p - i - 1) / (p - i - 1);

  const int head = i + 2;  // coordinates spanning S^{i+1}
  auto hits = run_blocks<std::uint64_t>(
      samples, workers, [&](std::uint64_t b, std::uint64_t, std::uint64_t count) {
        RngStream rng(seed, b);
        std::uint64_t k = 0;
        for (std::uint64_t s = 0; s < count; ++s) {
          const SpherePoint z = sampling::sample_uniform_sphere(p, rng);
          double h2 = 0.0;
          for (int j = 0; j < head; ++j) h2 += z[j] * z[j];
          const double cos_rho = std::sqrt(h2);
          const double u = rng.uniform();
          if (cos_rho <= cos_a) continue;  // rho >= alpha: empty slice
          const double cos_delta = std::min(1.0, cos_a / cos_rho);
          if (u < std::pow(cos_delta, i)) ++k;
        }
        return k;
      });
  std::uint64_t total = 0;
  for (auto k : hits) total += k;

  const double scale = constant * sphere::sphere_volume(i);
  const McEstimate frac = proportion_estimate(total, samples, seed);
  McEstimate mc{scale * frac.estimate, scale * frac.ci_low, scale * frac.ci_high, samples, seed};

  KinematicCheck out{lhs, analytic, mc, false, false};
  out.analytic_ok = std::abs(lhs - analytic) <= 1e-10 * std::abs(lhs);
  out.mc_ok = std::abs(mc.estimate - lhs) <= 3.0 * mc.half_width();
  return out;
}

double cap_volume(int p, double theta) {
  require(p >= 1, "cap_volume: p must be at least 1");
  require(theta >= 0.0 && theta <= std::numbers::pi + 1e-15, "cap_volume: theta in [0, pi]");
  if (theta == 0.0) return 0.0;
  if (theta <= std::numbers::pi / 2) return sphere::ball_volume(p, theta);
  const double rest = std::numbers::pi - theta;
  if (rest <= 0.0) return sphere::sphere_volume(p);
  return sphere::sphere_volume(p) - sphere::ball_volume(p, rest);
}

double band_volume(int p, double alpha, double beta) {
  require(p >= 2, "band_volume: p must be at least 2");
  require(beta > 0.0 && beta < alpha && alpha + beta <= std::numbers::pi + 1e-15,
          "band_volume: need 0 < beta < alpha and alpha + beta <= pi");
  return cap_volume(p, std::min(alpha + beta, std::numbers::pi)) - cap_volume(p, alpha - beta);
}

WeylTubeCheck verify_weyl_tube_bound(int p, double alpha, double beta) {
  require(alpha <= std::numbers::pi / 2 + 1e-15, "verify_weyl_tube_bound: alpha in (0, pi/2]");
  const double lhs = band_volume(p, alpha, beta);
  double rhs = 0.0;
  for (int i = 0; i <= p - 1; ++i) {
    rhs += sphere::j_integral(p, i + 1, beta) * geodesic_sphere_mu(p, alpha, i);
  }
  rhs *= 2.0;
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-12), (rhs - lhs) / rhs};
}

}  // namespace tubes
}  // namespace smoothcond
