#include "smoothcond/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "smoothcond/condition.hpp"
#include "smoothcond/io.hpp"
#include "smoothcond/sampling.hpp"
#include "smoothcond/sphere_geom.hpp"
#include "smoothcond/tubes.hpp"

namespace smoothcond::verify {

namespace {

constexpr double kPi = std::numbers::pi;

std::string label(const char* fmt, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

PolySystem unit(const PolySystem& f) { return f.scaled(1.0 / weyl_norm(f)); }

}  // namespace

bool Report::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

std::string Report::table(bool verbose) const {
  std::string out;
  char line[256];
  for (const auto& c : cases) {
    if (!verbose && c.pass) continue;
    std::snprintf(line, sizeof line, "  %-40s %-24s %-24s %s\n", c.label.c_str(),
                  io::format_double(c.value).c_str(), io::format_double(c.reference).c_str(),
                  c.pass ? "pass" : "FAIL");
    out += line;
  }
  std::snprintf(line, sizeof line, "%s: %zu/%zu cases pass -> %s\n", name.c_str(),
                cases.size() - failures(), cases.size(), pass() ? "PASS" : "FAIL");
  return out + line;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> a;
  for (int j = 0; j < 20; ++j) a.push_back(0.1 + (kPi / 2 - 0.1) * j / 19.0);
  a.back() = kPi / 2;
  return a;
}

Report jintegrals(int max_p, double tol) {
  Report r{"jintegrals", {}};
  for (int p = 1; p <= max_p; ++p) {
    for (int k = 1; k <= p; ++k) {
      for (double a : default_alpha_grid()) {
        const double rec = sphere::j_integral(p, k, a);
        const double quad = sphere::j_integral_quadrature(p, k, a);
        r.cases.push_back({label("J(p=%d,k=%d,a=%.6f)", p, k, a), rec, quad,
                           std::abs(rec - quad) <= tol});
      }
    }
  }
  return r;
}

Report j_inequalities(int max_p) {
  Report r{"j-inequalities", {}};
  constexpr double slack = 1e-12;
  for (int p = 1; p <= max_p; ++p) {
    const double ratio = std::exp(sphere::log_sphere_volume(p) - sphere::log_sphere_volume(p - 1)) / 2;
    for (int k = 1; k <= p; ++k) {
      for (double a : default_alpha_grid()) {
        const double j = sphere::j_integral(p, k, a);
        const double e = std::sin(a);
        if (k < p) {
          const double upper = std::pow(e, k) / k;
          r.cases.push_back({label("J(p=%d,k=%d,a=%.6f)<=e^k/k", p, k, a), j, upper,
                             j <= upper * (1 + slack)});
        } else {
          const double lower = std::pow(e, p) / p;
          const double upper = ratio * std::pow(e, p);
          r.cases.push_back({label("J(p=%d,p,a=%.6f)>=e^p/p", p, a), j, lower,
                             j >= lower * (1 - slack)});
          r.cases.push_back({label("J(p=%d,p,a=%.6f)<=ratio*e^p", p, a), j, upper,
                             j <= upper * (1 + slack)});
        }
      }
    }
    const double half = sphere::j_integral(p, p, kPi / 2);
    r.cases.push_back({label("J(p=%d,p,pi/2)=O_p/(2O_{p-1})", p), half, ratio,
                       std::abs(half - ratio) <= 1e-12 * ratio});
  }
  return r;
}

Report kinematic(const KinematicGrid& grid) {
  Report r{"kinematic", {}};
  for (int p : grid.ps) {
    for (int i = 0; i < p - 1; ++i) {
      for (double a : grid.alphas) {
        const auto c = tubes::verify_kinematic(p, i, a, 1, grid.seed, 1);
        r.cases.push_back({label("analytic p=%d i=%d a=%.3f", p, i, a), c.lhs, c.analytic_rhs,
                           c.analytic_ok});
      }
    }
  }
  for (const auto& [p, i] : grid.mc_cases) {
    for (double a : grid.mc_alphas) {
      const auto c = tubes::verify_kinematic(p, i, a, grid.samples, grid.seed, grid.workers);
      r.cases.push_back({label("monte-carlo p=%d i=%d a=%.3f (hw %.3g)", p, i, a,
                               c.mc_rhs.half_width()),
                         c.mc_rhs.estimate, c.lhs, c.mc_ok});
    }
  }
  return r;
}

Report weyltube(const std::vector<int>& ps) {
  Report r{"weyltube", {}};
  std::vector<double> alphas;
  for (int j = 1; j <= 7; ++j) alphas.push_back(0.2 * j);
  alphas.push_back(kPi / 2);
  for (int p : ps) {
    for (double a : alphas) {
      for (double frac : {0.25, 0.5, 0.75}) {
        const auto c = tubes::verify_weyl_tube_bound(p, a, frac * a);
        bool ok = c.pass;
        if (a == kPi / 2) ok = ok && std::abs(c.relative_gap) <= 1e-12;
        r.cases.push_back({label("p=%d a=%.4f b=%.4f", p, a, frac * a), c.lhs, c.rhs, ok});
      }
    }
  }
  return r;
}

Report eckart_young(int trials, int n_min, int n_max, std::uint64_t seed) {
  Report r{"eckart-young", {}};
  RngStream rng(seed, 0);
  for (int t = 0; t < trials; ++t) {
    const int n = n_min + static_cast<int>(rng.uniform() * (n_max - n_min + 1));
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
    }
    a /= a.norm();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smin = svd.singularValues()[n - 1];
    const Eigen::MatrixXd trunc =
        a - smin * svd.matrixU().col(n - 1) * svd.matrixV().col(n - 1).transpose();
    const double gap = (a - trunc).norm();

    std::vector<double> flat;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) flat.push_back(a(i, j));
    }
    const Variety det(Determinant{n});
    const double product = condition::frobenius_condition(a) * det.distance(SpherePoint::normalized(flat));
    r.cases.push_back({label("trial %d n=%d truncation", t, n), gap, smin,
                       std::abs(gap - smin) <= 1e-10});
    r.cases.push_back({label("trial %d n=%d kappa*dist", t, n), product, 1.0,
                       std::abs(product - 1.0) <= 1e-8});
  }
  return r;
}

double discriminant_distance_2x2(const Eigen::Matrix2d& a, int directions) {
  // Coordinates in which the quadric (a-d)^2 + 4bc = 0 reads x^2 + u^2 = v^2.
  const double s2 = std::numbers::sqrt2;
  const double ax = (a(0, 0) - a(1, 1)) / s2;
  const double au = (a(0, 1) + a(1, 0)) / s2;
  const double av = (a(0, 1) - a(1, 0)) / s2;
  const double as = (a(0, 0) + a(1, 1)) / s2;
  const double norm2 = ax * ax + au * au + av * av + as * as;

  // Unit cone points: (x, u) = r (cos phi, sin phi), v = +-r, s = cos psi,
  // r = sin psi / sqrt 2. g is the inner product with A.
  auto g = [&](double phi, double psi, double sign) {
    return std::sin(psi) / s2 * (ax * std::cos(phi) + au * std::sin(phi) + sign * av) +
           as * std::cos(psi);
  };
  const int side = std::max(2, static_cast<int>(std::sqrt(directions / 2.0)));
  double best = -1e300, best_phi = 0.0, best_psi = 0.0, best_sign = 1.0;
  for (double sign : {1.0, -1.0}) {
    for (int i = 0; i < side; ++i) {
      const double phi = 2 * kPi * i / side;
      for (int j = 0; j <= side; ++j) {
        const double psi = kPi * j / side;
        const double v = g(phi, psi, sign);
        if (v > best) {
          best = v;
          best_phi = phi;
          best_psi = psi;
          best_sign = sign;
        }
      }
    }
  }
  double phi = best_phi, psi = best_psi;
  for (int it = 0; it < 50; ++it) {
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double ss = std::sin(psi), cs = std::cos(psi);
    const double lin = ax * cp + au * sp + best_sign * av;
    const double rot = -ax * sp + au * cp;
    const double g1 = ss / s2 * rot;
    const double g2 = cs / s2 * lin - as * ss;
    const double h11 = -ss / s2 * (ax * cp + au * sp);
    const double h22 = -ss / s2 * lin - as * cs;
    const double h12 = cs / s2 * rot;
    const double det = h11 * h22 - h12 * h12;
    if (!(h11 < 0.0 && det > 0.0)) break;  // not locally concave
    const double d1 = (h22 * g1 - h12 * g2) / det;
    const double d2 = (h11 * g2 - h12 * g1) / det;
    const double nphi = phi - d1, npsi = psi - d2;
    const double nv = g(nphi, npsi, best_sign);
    if (nv < best) break;
    phi = nphi;
    psi = npsi;
    best = nv;
    if (std::abs(d1) + std::abs(d2) < 1e-15) break;
  }
  best = std::max(best, 0.0);
  return std::sqrt(std::max(0.0, norm2 - best * best));
}

Report wilkinson(int trials, std::uint64_t seed, int directions) {
  Report r{"wilkinson", {}};
  RngStream rng(seed, 0);
  int t = 0;
  while (t < trials) {
    Eigen::Matrix2d a;
    a << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    const double tr = a.trace();
    const double disc = tr * tr - 4 * a.determinant();
    if (disc <= 1e-12 * a.squaredNorm()) continue;  // need simple real eigenvalues
    const double dist = discriminant_distance_2x2(a, directions);
    const double rhs = std::numbers::sqrt2 * a.norm() / dist;
    for (double lambda : {(tr + std::sqrt(disc)) / 2, (tr - std::sqrt(disc)) / 2}) {
      const double kappa = condition::eigenvalue_condition(a, lambda);
      r.cases.push_back({label("trial %d lambda=%.6f", t, lambda), kappa, rhs,
                         kappa <= rhs + 1e-6});
    }
    ++t;
  }
  return r;
}

Report cntr(int trials, const std::vector<int>& degrees, std::uint64_t seed) {
  Report r{"cntr", {}};
  RngStream rng(seed, 0);
  for (int t = 0; t < trials; ++t) {
    const int d = degrees[static_cast<std::size_t>(t) % degrees.size()];
    const SpherePoint zeta = sampling::sample_uniform_sphere(1, rng);
    const PolySystem f = unit(condition::force_zero(
        PolySystem({sampling::sample_weyl_polynomial(1, d, rng)}), zeta));
    PolySystem g = (t % 2 == 0)
                       ? condition::rank_drop_witness(f, zeta)
                       : condition::rank_drop_witness(
                             PolySystem({sampling::sample_weyl_polynomial(1, d, rng)}), zeta);
    const double mu = condition::mu_norm(f, zeta);
    const double dist = condition::projective_distance(f, g);
    r.cases.push_back({label("trial %d d=%d %s", t, d, t % 2 == 0 ? "rank-drop" : "random"),
                       mu * dist, 1.0, condition::cntr_witness_check(f, zeta, g)});
  }
  return r;
}

Report mu_closed_cases(int rotations, std::uint64_t seed) {
  Report r{"mu-closed-cases", {}};
  for (int n = 1; n <= 3; ++n) {
    std::vector<WeylPolynomial> polys;
    for (int i = 1; i <= n; ++i) {
      MultiIndex alpha(static_cast<std::size_t>(n) + 1, 0);
      alpha[static_cast<std::size_t>(i)] = 1;
      polys.push_back(WeylPolynomial::monomial(alpha));
    }
    const double mu = condition::mu_norm(PolySystem(polys), SpherePoint::north(n));
    r.cases.push_back({label("linear n=%d", n), mu, std::sqrt(n),
                       std::abs(mu - std::sqrt(n)) <= 1e-10});
  }
  {
    const double mu = condition::mu_norm(PolySystem({WeylPolynomial::monomial({1, 1})}),
                                         SpherePoint::north(1));
    r.cases.push_back({"X0*X1 at e0", mu, 1.0, std::abs(mu - 1.0) <= 1e-10});
  }
  RngStream rng(seed, 0);
  const SpherePoint zeta = sampling::sample_uniform_sphere(2, rng);
  const PolySystem f = condition::force_zero(
      PolySystem({sampling::sample_weyl_polynomial(2, 2, rng), sampling::sample_weyl_polynomial(2, 3, rng)}),
      zeta);
  const double base = condition::mu_norm(f, zeta);
  for (int k = 0; k < rotations; ++k) {
    const Rotation u = sampling::sample_rotation(3, rng);
    const PolySystem g = f.compose_linear(u.matrix.transpose());
    const double mu = condition::mu_norm(g, u.apply(zeta));
    r.cases.push_back({label("rotation %d", k), mu, base, std::abs(mu - base) <= 1e-8 * base});
  }
  return r;
}

}  // namespace smoothcond::verify
