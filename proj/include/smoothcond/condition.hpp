#pragma once

#include <vector>

#include <Eigen/Dense>

#include "smoothcond/polynomial.hpp"
#include "smoothcond/sampling.hpp"
#include "smoothcond/sphere_geom.hpp"

namespace smoothcond::condition {

// Evaluators return +infinity for ill-posed inputs and throw
// std::domain_error when a precondition is violated. Residual tolerances are
// relative to the norm of the input, never absolute.

/// kappa_F(A) = ||A||_F / sigma_min(A) for square A.
double frobenius_condition(const Eigen::MatrixXd& a);

/// kappa_F^dagger(A) = ||A||_F / sigma_m(A) for an l x m matrix with l >= m.
double moore_penrose_condition(const Eigen::MatrixXd& a);

/// kappa(A, lambda) = ||x|| ||y|| / |<x, y>| with x, y the right and left
/// eigenvectors of the real eigenvalue lambda, taken as null vectors of
/// A - lambda I and its transpose.
double eigenvalue_condition(const Eigen::MatrixXd& a, double lambda);

/// A matrix with a real double eigenvalue near A, found by local search.
struct DoubleEigenWitness {
  Eigen::MatrixXd matrix;  // B, with a real eigenvalue of multiplicity >= 2
  double eigenvalue;       // the double eigenvalue of B
  double distance;         // ||A - B||_F, an upper bound on dist(A, Sigma)
};

/// Local search over orthogonal Q: every B of the form
/// Q [[l, b, *], [0, l, *], [0, 0, *]] Q^T has l as a double eigenvalue, and
/// every real matrix with a real double eigenvalue has such a form, so the
/// minimum over Q is exactly dist(A, Sigma) and each iterate is feasible.
/// Starts from the invariant planes of eigenvalue pairs plus `restarts`
/// random frames; each start runs up to `iters` Levenberg-Marquardt steps.
DoubleEigenWitness nearest_double_eigen(const Eigen::MatrixXd& a, int restarts, int iters,
                                        RngStream& rng);

/// sqrt(2) ||A||_F / d, with d from nearest_double_eigen. Never exceeds the
/// true kappa_eigen,R(A) since d >= dist(A, Sigma). Capped at 1e15.
double real_eigen_condition_lower(const Eigen::MatrixXd& a, int restarts, int iters,
                                  RngStream& rng);

inline constexpr double kConditionCap = 1e15;

/// Orthonormal basis of the tangent space zeta^perp as columns.
Eigen::MatrixXd tangent_basis(std::span<const double> zeta);

/// mu_norm(f, zeta) = ||f|| ||(Df(zeta)|_{T_zeta})^{-1} diag(sqrt d_i)||.
double mu_norm(const PolySystem& f, const SpherePoint& zeta);

/// max over the supplied real zeros of mu_norm; a lower bound on mu_norm,R(f).
double mu_norm_real_lower(const PolySystem& f, const std::vector<SpherePoint>& zeros);

/// Projective distance between systems in the Weyl metric.
double projective_distance(const PolySystem& f, const PolySystem& g);

/// Checks mu_norm(f, zeta) * d_P(f, g) >= 1 - 1e-6 for a witness g having
/// zeta as a multiple zero. An infinite mu_norm counts as a pass.
bool cntr_witness_check(const PolySystem& f, const SpherePoint& zeta, const PolySystem& g);

/// Unit-norm system g with zeta as a multiple zero, obtained from f by
/// subtracting <x, zeta>^{d_i - 1} (Delta T^T x)_i, where Delta is the rank-one
/// part of Df(zeta)|_{T_zeta} at its smallest singular value.
PolySystem rank_drop_witness(const PolySystem& f, const SpherePoint& zeta);

/// Replaces each f_i by f_i - f_i(zeta) <x, zeta>^{d_i}, so zeta becomes a zero.
PolySystem force_zero(const PolySystem& f, const SpherePoint& zeta);

}  // namespace smoothcond::condition
