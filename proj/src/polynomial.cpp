#include "smoothcond/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "smoothcond/sphere_geom.hpp"

namespace smoothcond {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

double int_pow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

WeylPolynomial::WeylPolynomial(int n, int degree) : n_(n), degree_(degree) {
  require(n >= 0, "WeylPolynomial: n must be nonnegative");
  require(degree >= 0, "WeylPolynomial: degree must be nonnegative");
}

void WeylPolynomial::add_term(const MultiIndex& alpha, double coeff) {
  require(static_cast<int>(alpha.size()) == num_vars(),
          "WeylPolynomial: multi-index length does not match variable count");
  int total = 0;
  for (int a : alpha) {
    require(a >= 0, "WeylPolynomial: negative exponent");
    total += a;
  }
  require(total == degree_, "WeylPolynomial: multi-index does not sum to the degree");
  coeffs_[alpha] += coeff;
}

double WeylPolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? 0.0 : it->second;
}

double WeylPolynomial::evaluate(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == num_vars(), "WeylPolynomial: point dimension mismatch");
  double sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    double term = c;
    for (int k = 0; k <= n_; ++k) term *= int_pow(x[k], alpha[k]);
    sum += term;
  }
  return sum;
}

Eigen::VectorXd WeylPolynomial::gradient(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == num_vars(), "WeylPolynomial: point dimension mismatch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(num_vars());
  for (const auto& [alpha, c] : coeffs_) {
    for (int j = 0; j <= n_; ++j) {
      if (alpha[j] == 0) continue;
      double term = c * alpha[j];
      for (int k = 0; k <= n_; ++k) term *= int_pow(x[k], k == j ? alpha[k] - 1 : alpha[k]);
      g[j] += term;
    }
  }
  return g;
}

WeylPolynomial& WeylPolynomial::operator*=(double s) {
  for (auto& [alpha, c] : coeffs_) c *= s;
  return *this;
}

WeylPolynomial& WeylPolynomial::operator+=(const WeylPolynomial& other) {
  require(n_ == other.n_ && degree_ == other.degree_, "WeylPolynomial: shape mismatch");
  for (const auto& [alpha, c] : other.coeffs_) coeffs_[alpha] += c;
  return *this;
}

WeylPolynomial& WeylPolynomial::operator-=(const WeylPolynomial& other) {
  require(n_ == other.n_ && degree_ == other.degree_, "WeylPolynomial: shape mismatch");
  for (const auto& [alpha, c] : other.coeffs_) coeffs_[alpha] -= c;
  return *this;
}

WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b) {
  require(a.n_ == b.n_, "WeylPolynomial: variable count mismatch");
  WeylPolynomial out(a.n_, a.degree_ + b.degree_);
  MultiIndex gamma(static_cast<std::size_t>(a.num_vars()));
  for (const auto& [alpha, ca] : a.coeffs_) {
    for (const auto& [beta, cb] : b.coeffs_) {
      for (std::size_t k = 0; k < gamma.size(); ++k) gamma[k] = alpha[k] + beta[k];
      out.coeffs_[gamma] += ca * cb;
    }
  }
  return out;
}

WeylPolynomial WeylPolynomial::linear_form(std::span<const double> c) {
  require(!c.empty(), "linear_form: need at least one variable");
  const int n = static_cast<int>(c.size()) - 1;
  WeylPolynomial out(n, 1);
  for (int k = 0; k <= n; ++k) {
    if (c[k] == 0.0) continue;
    MultiIndex e(c.size(), 0);
    e[k] = 1;
    out.coeffs_[e] = c[k];
  }
  return out;
}

WeylPolynomial WeylPolynomial::monomial(const MultiIndex& alpha) {
  require(!alpha.empty(), "monomial: need at least one variable");
  const int degree = std::accumulate(alpha.begin(), alpha.end(), 0);
  WeylPolynomial out(static_cast<int>(alpha.size()) - 1, degree);
  out.add_term(alpha, 1.0);
  return out;
}

WeylPolynomial WeylPolynomial::compose_linear(const Eigen::MatrixXd& m) const {
  require(m.rows() == num_vars() && m.cols() == num_vars(),
          "compose_linear: matrix size must match variable count");
  const int nv = num_vars();
  // Row k of m gives the linear form substituted for X_k; cache its powers.
  std::vector<std::vector<WeylPolynomial>> powers(static_cast<std::size_t>(nv));
  for (int k = 0; k < nv; ++k) {
    std::vector<double> row(static_cast<std::size_t>(nv));
    for (int j = 0; j < nv; ++j) row[j] = m(k, j);
    WeylPolynomial one(n_, 0);
    one.coeffs_[MultiIndex(static_cast<std::size_t>(nv), 0)] = 1.0;
    powers[k].push_back(one);
    const WeylPolynomial lin = linear_form(row);
    for (int e = 1; e <= degree_; ++e) powers[k].push_back(powers[k].back() * lin);
  }
  WeylPolynomial out(n_, degree_);
  for (const auto& [alpha, c] : coeffs_) {
    WeylPolynomial term = powers[0][alpha[0]];
    for (int k = 1; k < nv; ++k) term = term * powers[k][alpha[k]];
    term *= c;
    out += term;
  }
  return out;
}

double multinomial(const MultiIndex& alpha) {
  double r = 1.0;
  int running = 0;
  for (int a : alpha) {
    require(a >= 0, "multinomial: negative exponent");
    running += a;
    r *= sphere::binomial(running, a);
  }
  return r;
}

double weyl_inner(const WeylPolynomial& f, const WeylPolynomial& g) {
  require(f.n() == g.n() && f.degree() == g.degree(),
          "weyl_inner: variable count or degree mismatch");
  double sum = 0.0;
  for (const auto& [alpha, a] : f.coefficients()) {
    const double b = g.coefficient(alpha);
    if (b != 0.0) sum += a * b / multinomial(alpha);
  }
  return sum;
}

double weyl_norm(const WeylPolynomial& f) { return std::sqrt(std::max(0.0, weyl_inner(f, f))); }

PolySystem::PolySystem(std::vector<WeylPolynomial> polys) : polys_(std::move(polys)) {
  require(!polys_.empty(), "PolySystem: need at least one polynomial");
  for (const auto& f : polys_) {
    require(f.n() == n(), "PolySystem: a system of n forms must use n+1 variables");
  }
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> d;
  d.reserve(polys_.size());
  for (const auto& f : polys_) d.push_back(f.degree());
  return d;
}

Eigen::VectorXd PolySystem::evaluate(std::span<const double> x) const {
  Eigen::VectorXd v(n());
  for (int i = 0; i < n(); ++i) v[i] = polys_[i].evaluate(x);
  return v;
}

Eigen::MatrixXd PolySystem::jacobian(std::span<const double> x) const {
  Eigen::MatrixXd j(n(), num_vars());
  for (int i = 0; i < n(); ++i) j.row(i) = polys_[i].gradient(x).transpose();
  return j;
}

PolySystem PolySystem::compose_linear(const Eigen::MatrixXd& m) const {
  std::vector<WeylPolynomial> out;
  out.reserve(polys_.size());
  for (const auto& f : polys_) out.push_back(f.compose_linear(m));
  return PolySystem(std::move(out));
}

PolySystem PolySystem::scaled(double s) const {
  std::vector<WeylPolynomial> out = polys_;
  for (auto& f : out) f *= s;
  return PolySystem(std::move(out));
}

double weyl_inner(const PolySystem& f, const PolySystem& g) {
  require(f.n() == g.n(), "weyl_inner: system size mismatch");
  double sum = 0.0;
  for (int i = 0; i < f.n(); ++i) sum += weyl_inner(f[i], g[i]);
  return sum;
}

double weyl_norm(const PolySystem& f) { return std::sqrt(std::max(0.0, weyl_inner(f, f))); }

}  // namespace smoothcond
