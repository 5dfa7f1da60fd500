#pragma once

#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace smoothcond {

using MultiIndex = std::vector<int>;

/// Homogeneous real polynomial in X_0 .. X_n, stored sparsely by exponent.
class WeylPolynomial {
 public:
  WeylPolynomial(int n, int degree);

  int n() const { return n_; }
  int num_vars() const { return n_ + 1; }
  int degree() const { return degree_; }
  const std::map<MultiIndex, double>& coefficients() const { return coeffs_; }

  /// Adds `coeff` to the coefficient of X^alpha. Throws std::domain_error if
  /// alpha has the wrong length, a negative entry, or |alpha| != degree.
  void add_term(const MultiIndex& alpha, double coeff);
  double coefficient(const MultiIndex& alpha) const;

  double evaluate(std::span<const double> x) const;
  /// Gradient in R^{n+1}.
  Eigen::VectorXd gradient(std::span<const double> x) const;

  /// x -> f(M x) for a (n+1)x(n+1) matrix M, expanded on the monomial basis.
  WeylPolynomial compose_linear(const Eigen::MatrixXd& m) const;

  WeylPolynomial& operator*=(double s);
  WeylPolynomial& operator+=(const WeylPolynomial& other);
  WeylPolynomial& operator-=(const WeylPolynomial& other);

  /// Product of two forms in the same variables.
  friend WeylPolynomial operator*(const WeylPolynomial& a, const WeylPolynomial& b);

  /// The linear form sum_k c_k X_k.
  static WeylPolynomial linear_form(std::span<const double> c);
  /// X_0^{a_0} ... X_n^{a_n} with unit coefficient.
  static WeylPolynomial monomial(const MultiIndex& alpha);

 private:
  int n_;
  int degree_;
  std::map<MultiIndex, double> coeffs_;
};

/// Multinomial coefficient d! / (alpha_0! ... alpha_n!).
double multinomial(const MultiIndex& alpha);

/// Weyl (Bombieri) inner product: sum_alpha C(d, alpha)^{-1} a_alpha b_alpha.
double weyl_inner(const WeylPolynomial& f, const WeylPolynomial& g);
double weyl_norm(const WeylPolynomial& f);

/// Square system f = (f_1, ..., f_n) of forms in n+1 variables.
class PolySystem {
 public:
  explicit PolySystem(std::vector<WeylPolynomial> polys);

  int n() const { return static_cast<int>(polys_.size()); }
  int num_vars() const { return n() + 1; }
  const std::vector<WeylPolynomial>& polys() const { return polys_; }
  const WeylPolynomial& operator[](std::size_t i) const { return polys_[i]; }
  std::vector<int> degrees() const;

  Eigen::VectorXd evaluate(std::span<const double> x) const;
  /// n x (n+1) derivative matrix.
  Eigen::MatrixXd jacobian(std::span<const double> x) const;

  PolySystem compose_linear(const Eigen::MatrixXd& m) const;
  PolySystem scaled(double s) const;

 private:
  std::vector<WeylPolynomial> polys_;
};

double weyl_inner(const PolySystem& f, const PolySystem& g);
double weyl_norm(const PolySystem& f);

}  // namespace smoothcond
