#include "smoothcond/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "smoothcond/sphere_geom.hpp"

namespace smoothcond::bounds {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

void check_common(int p, int d, double sigma) {
  require(p >= 1, "bound: p must be at least 1");
  require(d >= 1, "bound: d must be at least 1");
  require(sigma > 0.0 && sigma <= 1.0, "bound: sigma must lie in (0, 1]");
}

// log(sum exp(v)) over a nonempty list.
double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// 4 sum_{k=1}^{p-1} C(p,k) (2d)^k (1+r)^{p-k} r^k + (2p O_p / O_{p-1}) (2d)^p r^p
double tube_expression(int p, int d, double r) {
  const double log_2d = std::log(2.0 * d);
  const double log_r = std::log(r);
  const double log_1r = std::log1p(r);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(p));
  for (int k = 1; k <= p - 1; ++k) {
    terms.push_back(std::log(4.0) + sphere::log_binomial(p, k) + k * log_2d + (p - k) * log_1r +
                    k * log_r);
  }
  terms.push_back(std::log(2.0 * p) + sphere::log_sphere_volume(p) -
                  sphere::log_sphere_volume(p - 1) + p * log_2d + p * log_r);
  return std::exp(log_sum_exp(terms));
}

}  // namespace

double tube_ratio_bound(int p, int d, double sigma, double eps) {
  check_common(p, d, sigma);
  require(eps > 0.0 && eps <= 1.0, "tube_ratio_bound: eps must lie in (0, 1]");
  return tube_expression(p, d, eps / sigma);
}

double tail_bound(int p, int d, double sigma, double t) {
  check_common(p, d, sigma);
  require(t >= 1.0 && std::isfinite(t), "tail_bound: t must be finite and at least 1");
  return tube_ratio_bound(p, d, sigma, 1.0 / t);
}

double expectation_bound(int p, int d, double sigma) {
  check_common(p, d, sigma);
  require(p >= 2, "expectation_bound: p must be at least 2");
  return 2.0 * std::log(p) + 2.0 * std::log(d) + 2.0 * std::log(1.0 / sigma) + 5.5;
}

double smooth_tube_bound(int p, int d, double sigma, double eps) {
  check_common(p, d, sigma);
  require(p >= 2, "smooth_tube_bound: p must be at least 2");
  require(eps > 0.0 && eps <= 1.0, "smooth_tube_bound: eps must lie in (0, 1]");
  const double log_d = std::log(d);
  const double log_eps = std::log(eps);
  const double log_sigma = std::log(sigma);
  const double log_front = std::log(4.0) + sphere::log_sphere_volume(p - 1) - std::log(p);
  std::vector<double> terms;
  for (int k = 1; k <= p - 1; ++k) {
    terms.push_back(log_front + sphere::log_binomial(p, k) + k * (log_d + log_eps) +
                    (p - k) * log_sigma);
  }
  terms.push_back(std::log(2.0) + sphere::log_sphere_volume(p) + p * (log_d + log_eps));
  return std::exp(log_sum_exp(terms));
}

double curvature_integral_bound(int p, int d, double sigma, int i) {
  check_common(p, d, sigma);
  require(i >= 0 && i <= p - 1, "curvature_integral_bound: need 0 <= i <= p-1");
  return std::exp(std::log(2.0) + sphere::log_binomial(p - 1, i) +
                  sphere::log_sphere_volume(p - 1) + (i + 1) * std::log(d) +
                  (p - i - 1) * std::log(sigma));
}

bool linear_tail_applies(int p, int d, double sigma, double eps) {
  check_common(p, d, sigma);
  require(p >= 2, "linear_tail_bound: p must be at least 2");
  require(eps > 0.0 && eps <= 1.0, "linear_tail_bound: eps must lie in (0, 1]");
  return eps <= sigma / ((1.0 + 2.0 * d) * (p - 1.0));
}

std::optional<double> linear_tail_bound(int p, int d, double sigma, double eps) {
  if (!linear_tail_applies(p, d, sigma, eps)) return std::nullopt;
  return (8.0 * std::numbers::e + 4.0) * d * p * eps / sigma;
}

namespace {

long long checked_binomial(long long n, long long k) {
  // C(n, k) with overflow detection; exact for values below 2^62.
  k = std::min(k, n - k);
  long long r = 1;
  for (long long j = 1; j <= k; ++j) {
    const long long num = n - k + j;
    if (r > std::numeric_limits<long long>::max() / num) {
      throw std::domain_error("problem shape: dimension overflows");
    }
    r = r * num / j;
  }
  return r;
}

}  // namespace

ProblemShape problem_shape(const ProblemDescriptor& problem) {
  struct Visitor {
    ProblemShape operator()(const MatrixInversion& m) const {
      require(m.n >= 1, "matrix-inversion: n must be at least 1");
      return {1LL * m.n * m.n - 1, m.n};
    }
    ProblemShape operator()(const MoorePenrose& m) const {
      require(m.cols >= 1 && m.rows >= m.cols, "moore-penrose: need l >= m >= 1");
      return {1LL * m.rows * m.cols - 1, m.cols};
    }
    ProblemShape operator()(const EigenReal& m) const {
      require(m.n >= 1, "eigen-real: n must be at least 1");
      return {1LL * m.n * m.n - 1, 1LL * m.n * m.n - m.n};
    }
    ProblemShape operator()(const EigenComplex& m) const {
      require(m.n >= 1, "eigen-complex: n must be at least 1");
      return {2LL * m.n * m.n - 1, 1LL * m.n * m.n - m.n};
    }
    ProblemShape operator()(const PolySystemShape& s) const {
      require(!s.degrees.empty(), "polysys: at least one polynomial required");
      const long long n = static_cast<long long>(s.degrees.size());
      long long dim = 0;
      long long bezout = 1;
      for (int di : s.degrees) {
        require(di >= 1, "polysys: degrees must be positive");
        dim += checked_binomial(n + di, n);
        if (bezout > std::numeric_limits<long long>::max() / di) {
          throw std::domain_error("polysys: Bezout number overflows");
        }
        bezout *= di;
      }
      const double d = 2.0 * n * static_cast<double>(bezout) * static_cast<double>(bezout);
      require(d < 9e18, "polysys: discriminant degree overflows");
      return {dim - 1, 2 * n * bezout * bezout};
    }
  };
  return std::visit(Visitor{}, problem);
}

std::string problem_name(const ProblemDescriptor& problem) {
  static const char* names[] = {"matrix-inversion", "moore-penrose", "eigen-real",
                                "eigen-complex", "polysys"};
  return names[problem.index()];
}

double application_bound(const ProblemDescriptor& problem, double sigma, double t, Mode mode) {
  require(sigma > 0.0 && sigma <= 1.0, "bound: sigma must lie in (0, 1]");
  const ProblemShape shape = problem_shape(problem);
  if (mode == Mode::kTail) {
    require(shape.p >= 1 && shape.p <= std::numeric_limits<int>::max(),
            "application_bound: problem dimension out of range");
    require(shape.d >= 1 && shape.d <= std::numeric_limits<int>::max(),
            "application_bound: problem degree out of range");
    return tail_bound(static_cast<int>(shape.p), static_cast<int>(shape.d), sigma, t);
  }

  const double log_inv_sigma = 2.0 * std::log(1.0 / sigma);
  struct Visitor {
    double log_inv_sigma;
    double operator()(const MatrixInversion& m) const {
      return 6.0 * std::log(m.n) + log_inv_sigma + 5.5;
    }
    double operator()(const MoorePenrose& m) const {
      return 2.0 * std::log(m.rows) + 4.0 * std::log(m.cols) + log_inv_sigma + 5.5;
    }
    double operator()(const EigenReal& m) const {
      return 8.0 * std::log(m.n) + log_inv_sigma + 6.0;
    }
    double operator()(const EigenComplex& m) const {
      return 8.0 * std::log(m.n) + log_inv_sigma + 6.0 + 2.0 * std::log(2.0);
    }
    double operator()(const PolySystemShape& s) const {
      const double n = static_cast<double>(s.degrees.size());
      double log_bezout = 0.0;
      for (int di : s.degrees) log_bezout += std::log(di);
      const double big_n = static_cast<double>(problem_shape(s).p);
      return 2.0 * std::log(big_n) + 4.0 * log_bezout + 2.0 * std::log(n) + log_inv_sigma + 7.0;
    }
  };
  return std::visit(Visitor{log_inv_sigma}, problem);
}

}  // namespace smoothcond::bounds
