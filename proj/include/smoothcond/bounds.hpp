#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace smoothcond::bounds {

// Closed-form evaluators for the smoothed tail, expectation and tube-volume
// bounds of conic condition numbers whose ill-posed set lies in the zero set
// W of homogeneous polynomials of degree <= d on S^p. All sums are taken in
// log space, so values stay finite for p up to ~1e4 and d up to ~1e3.

/// Prob_{z in B_P(a, sigma)} { C(z) >= t }, for t >= 1.
double tail_bound(int p, int d, double sigma, double t);

/// sup_a E_{z in B_P(a, sigma)} ln C(z) <= 2 ln p + 2 ln d + 2 ln(1/sigma) + 5.5.
/// Requires p >= 2.
double expectation_bound(int p, int d, double sigma);

/// vol(T_P(W, eps) cap B_P(a, sigma)) / vol B_P(a, sigma).
/// Identical to tail_bound(p, d, sigma, 1/eps) term for term.
double tube_ratio_bound(int p, int d, double sigma, double eps);

/// Absolute volume bound for the eps-tube of a smooth hypersurface patch
/// V cap B_P(a, sigma). The underlying result assumes V is the zero set of
/// one polynomial of even degree d; odd d is accepted for exploratory use.
double smooth_tube_bound(int p, int d, double sigma, double eps);

/// Bound on the integral of i-th absolute curvature |mu_i|(V cap B_P(a, sigma)).
double curvature_integral_bound(int p, int d, double sigma, int i);

/// (8e + 4) d p eps / sigma, valid only when eps <= sigma / ((1 + 2d)(p - 1)).
/// Returns nullopt outside that range: the linear form then does not apply.
std::optional<double> linear_tail_bound(int p, int d, double sigma, double eps);

/// True when the linear tail bound applies.
bool linear_tail_applies(int p, int d, double sigma, double eps);

// Problem descriptors for the applications.
struct MatrixInversion {
  int n;
};
struct MoorePenrose {
  int rows;  // l
  int cols;  // m, rows >= cols
};
struct EigenReal {
  int n;
};
struct EigenComplex {
  int n;
};
struct PolySystemShape {
  std::vector<int> degrees;  // d_1 .. d_n, system in n+1 homogeneous variables
};

using ProblemDescriptor =
    std::variant<MatrixInversion, MoorePenrose, EigenReal, EigenComplex, PolySystemShape>;

/// Ambient sphere dimension p and degree d of the ill-posed hypersurface.
struct ProblemShape {
  long long p;
  long long d;
};

ProblemShape problem_shape(const ProblemDescriptor& problem);
std::string problem_name(const ProblemDescriptor& problem);

enum class Mode { kTail, kExpectation };

/// Tail mode: tail_bound(p, d, sigma, t) with (p, d) from the problem.
/// Expectation mode: the per-problem closed forms,
///   matrix inversion   6 ln n + 2 ln(1/sigma) + 5.5
///   Moore-Penrose      2 ln l + 4 ln m + 2 ln(1/sigma) + 5.5
///   real eigenvalues   8 ln n + 2 ln(1/sigma) + 6
///   complex eigenvalues 8 ln n + 2 ln(1/sigma) + 6 + 2 ln 2
///   polynomial systems 2 ln N + 4 ln D + 2 ln n + 2 ln(1/sigma) + 7
/// `t` is ignored in expectation mode.
double application_bound(const ProblemDescriptor& problem, double sigma, double t, Mode mode);

}  // namespace smoothcond::bounds
