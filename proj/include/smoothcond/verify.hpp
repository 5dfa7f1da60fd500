#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace smoothcond::verify {

// Verification suites shared by `smoothcond verify` and the acceptance
// runner. Each returns one row per case and passes iff every row passes.

struct CaseResult {
  std::string label;
  double value;
  double reference;
  bool pass;
};

struct Report {
  std::string name;
  std::vector<CaseResult> cases;

  bool pass() const;
  std::size_t failures() const;
  /// Fixed-width table of the failing cases (all cases when verbose), then
  /// an overall line.
  std::string table(bool verbose = false) const;
};

/// 20 angles spread evenly over [0.1, pi/2].
std::vector<double> default_alpha_grid();

/// Recurrence against adaptive quadrature, |difference| <= tol, for every
/// p <= max_p and 1 <= k <= p.
Report jintegrals(int max_p = 20, double tol = 1e-10);

/// J_{p,k}(a) <= sin^k a / k for k < p, and
/// sin^p a / p <= J_{p,p}(a) <= O_p / (2 O_{p-1}) sin^p a, with equality
/// J_{p,p}(pi/2) = O_p / (2 O_{p-1}) to 1e-12 relative.
Report j_inequalities(int max_p = 20);

struct KinematicGrid {
  std::vector<int> ps = {2, 3, 4, 5};
  std::vector<double> alphas = {0.3, 0.6, 1.0, 1.4};
  // Monte Carlo cases (p, i), each checked at every angle in mc_alphas.
  std::vector<std::pair<int, int>> mc_cases = {{2, 0}, {3, 0}, {3, 1}, {4, 1}};
  std::vector<double> mc_alphas = {0.3, 0.6, 1.0, 1.4};
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 7;
  int workers = 1;
};

Report kinematic(const KinematicGrid& grid);

/// Weyl tube volume bound on bands around geodesic spheres. Angles
/// 0.2, 0.4, ..., 1.4 and pi/2; beta in {a/4, a/2, 3a/4}. At pi/2 the gap
/// must also vanish to 1e-12 relative.
Report weyltube(const std::vector<int>& ps = {2, 3, 4, 6});

/// Random Gaussian matrices with n drawn from [n_min, n_max]: the rank-(n-1)
/// SVD truncation sits at Frobenius distance sigma_min, and
/// kappa_F(A) d_P(A, singular matrices) = 1 on the unit sphere.
Report eckart_young(int trials = 1000, int n_min = 2, int n_max = 5, std::uint64_t seed = 7);

/// Distance from a 2x2 matrix to the matrices with a double eigenvalue (the
/// discriminant quadric), by scanning `directions` points of the unit cone
/// and refining the best with Newton's method. Independent of the Schur
/// search used for larger matrices.
double discriminant_distance_2x2(const Eigen::Matrix2d& a, int directions = 10000);

/// kappa(A, lambda) <= sqrt(2) ||A||_F / dist(A, Sigma) + 1e-6 for every real
/// eigenvalue of random 2x2 matrices with simple real eigenvalues.
Report wilkinson(int trials = 1000, std::uint64_t seed = 7, int directions = 10000);

/// mu_norm(f, zeta) d_P(f, g) >= 1 - 1e-6 for random univariate forms f with
/// a forced zero zeta and witnesses g having zeta as a multiple zero. Even
/// trials use the rank-drop witness of f, odd trials a random one.
Report cntr(int trials = 1000, const std::vector<int>& degrees = {2, 3, 4},
            std::uint64_t seed = 7);

/// mu_norm on closed-form cases: X_1..X_n at e_0 gives sqrt(n); X_0 X_1 at
/// e_0 gives 1; a random system keeps its value under Haar rotations.
Report mu_closed_cases(int rotations = 100, std::uint64_t seed = 7);

}  // namespace smoothcond::verify
