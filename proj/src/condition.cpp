#include "smoothcond/condition.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace smoothcond::condition {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroResidual = 1e-8;

void require(bool cond, const char* what) {
  if (!cond) throw std::domain_error(what);
}

void require_finite(const Eigen::MatrixXd& a) {
  require(a.allFinite(), "condition: matrix has non-finite entries");
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
}

}  // namespace

double frobenius_condition(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols() && a.rows() >= 1, "frobenius_condition: matrix must be square");
  require_finite(a);
  const double fro = a.norm();
  require(fro > 0.0, "frobenius_condition: zero matrix");
  const double smin = singular_values(a).minCoeff();
  if (smin <= 1e-14 * fro) return kInf;
  return fro / smin;
}

double moore_penrose_condition(const Eigen::MatrixXd& a) {
  require(a.cols() >= 1 && a.rows() >= a.cols(),
          "moore_penrose_condition: need l >= m >= 1 (transpose wide matrices)");
  require_finite(a);
  const double fro = a.norm();
  require(fro > 0.0, "moore_penrose_condition: zero matrix");
  const Eigen::VectorXd s = singular_values(a);
  const double smin = s[s.size() - 1];
  if (smin <= 1e-14 * fro) return kInf;
  return fro / smin;
}

double eigenvalue_condition(const Eigen::MatrixXd& a, double lambda) {
  require(a.rows() == a.cols() && a.rows() >= 1, "eigenvalue_condition: matrix must be square");
  require_finite(a);
  const int n = static_cast<int>(a.rows());
  const double scale = std::max(a.norm(), std::abs(lambda));
  const Eigen::MatrixXd shifted = a - lambda * Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  // ||A x - lambda x|| for the unit null-vector candidate is sigma_min.
  if (s[n - 1] > kZeroResidual * scale) {
    throw std::domain_error("eigenvalue_condition: lambda is not an eigenvalue of A");
  }
  // A second (near) null direction means geometric multiplicity >= 2.
  if (n >= 2 && s[n - 2] <= kZeroResidual * scale) return kInf;
  const Eigen::VectorXd x = svd.matrixV().col(n - 1);
  const Eigen::VectorXd y = svd.matrixU().col(n - 1);
  const double dot = std::abs(x.dot(y));
  const double prod = x.norm() * y.norm();
  if (dot <= 1e-12 * prod) return kInf;
  return prod / dot;
}

namespace {

// Residuals of M = Q^T A Q against the pattern [[l, b, *], [0, l, *], [0, 0, *]]:
// the first column below the diagonal, the second column below row 1, and
// the gap between the two leading diagonal entries.
Eigen::VectorXd schur_residuals(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXd r(2 * n - 2);
  r.head(n - 1) = m.col(0).tail(n - 1);
  r.segment(n - 1, n - 2) = m.col(1).tail(n - 2);
  r[2 * n - 3] = (m(0, 0) - m(1, 1)) / std::sqrt(2.0);
  return r;
}

// Orthogonal completion of a 2-frame, keeping the frame's span and sign.
Eigen::MatrixXd complete_frame(const Eigen::MatrixXd& frame) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < 2; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// Levenberg-Marquardt over Q in O(n). Moving Q to Q C(W) with the Cayley
// transform C of a skew W changes M to first order by M W - W M, so the
// Jacobian of the residuals is exact and cheap.
Eigen::MatrixXd descend(const Eigen::MatrixXd& a, Eigen::MatrixXd q, int iters) {
  const Eigen::Index n = a.rows();
  const Eigen::Index dof = n * (n - 1) / 2;
  Eigen::MatrixXd m = q.transpose() * a * q;
  Eigen::VectorXd r = schur_residuals(m);
  double f = r.squaredNorm();
  double mu = 1e-3;
  Eigen::MatrixXd jac(r.size(), dof);
  for (int it = 0; it < iters && f > 0.0; ++it) {
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index l = k + 1; l < n; ++l, ++col) {
        // M G - G M for G = E_kl - E_lk.
        Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(n, n);
        dm.col(l) += m.col(k);
        dm.col(k) -= m.col(l);
        dm.row(k) -= m.row(l);
        dm.row(l) += m.row(k);
        jac.col(col) = schur_residuals(dm);
      }
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    if (jtr.norm() <= 1e-15 * std::max(1.0, std::sqrt(f))) break;
    bool moved = false;
    while (mu < 1e12) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd delta = lhs.ldlt().solve(-jtr);
      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
      col = 0;
      for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = k + 1; l < n; ++l, ++col) {
          w(k, l) = delta[col];
          w(l, k) = -delta[col];
        }
      }
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      const Eigen::MatrixXd cayley = (eye - 0.5 * w).partialPivLu().solve(eye + 0.5 * w);
      Eigen::MatrixXd q_trial = q * cayley;
      const Eigen::MatrixXd m_trial = q_trial.transpose() * a * q_trial;
      const Eigen::VectorXd r_trial = schur_residuals(m_trial);
      const double f_trial = r_trial.squaredNorm();
      if (f_trial < f) {
        q = std::move(q_trial);
        m = m_trial;
        r = r_trial;
        f = f_trial;
        mu = std::max(mu / 3.0, 1e-12);
        moved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!moved) break;
  }
  // Cayley steps are orthogonal only up to rounding.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  Eigen::MatrixXd clean = qr.householderQ();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) clean.col(j) = -clean.col(j);
  }
  return clean;
}

// Frames spanning the invariant plane of each pair of real eigenvalues
// (eigenvector first, both orders) or of each complex pair. Each is already
// block triangular, so the residual starts at the eigenvalue gap.
std::vector<Eigen::MatrixXd> eigen_frames(const Eigen::MatrixXd& a) {
  std::vector<Eigen::MatrixXd> frames;
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) return frames;
  const Eigen::VectorXcd values = es.eigenvalues();
  const Eigen::MatrixXcd vectors = es.eigenvectors();
  const int n = static_cast<int>(a.rows());
  auto add = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::MatrixXd f(n, 2);
    f << u, v;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(f);
    if (svd.singularValues()[1] > 1e-8 * svd.singularValues()[0]) frames.push_back(f);
  };
  const double tiny = 1e-12 * a.norm();
  for (int i = 0; i < n; ++i) {
    if (std::abs(values[i].imag()) > tiny) {
      if (values[i].imag() > 0) add(vectors.col(i).real(), vectors.col(i).imag());
      continue;
    }
    for (int j = 0; j < n; ++j) {
      if (j != i && std::abs(values[j].imag()) <= tiny) add(vectors.col(i).real(), vectors.col(j).real());
    }
  }
  return frames;
}

}  // namespace

DoubleEigenWitness nearest_double_eigen(const Eigen::MatrixXd& a, int restarts, int iters,
                                        RngStream& rng) {
  require(a.rows() == a.cols() && a.rows() >= 2, "nearest_double_eigen: need square n >= 2");
  require(restarts >= 1 && iters >= 0, "nearest_double_eigen: need restarts >= 1");
  require_finite(a);
  const int n = static_cast<int>(a.rows());
  const double fro = a.norm();
  if (fro == 0.0) return {a, 0.0, 0.0};
  const Eigen::MatrixXd unit = a / fro;

  Eigen::MatrixXd best;
  double best_f = kInf;
  auto try_start = [&](const Eigen::MatrixXd& frame) {
    Eigen::MatrixXd q = descend(unit, complete_frame(frame), iters);
    const double f = schur_residuals(q.transpose() * unit * q).squaredNorm();
    if (f < best_f) {
      best_f = f;
      best = std::move(q);
    }
  };
  for (const auto& start : eigen_frames(unit)) try_start(start);
  for (int r = 0; r < restarts; ++r) try_start(sampling::sample_rotation(n, rng).matrix.leftCols(2));

  // Project Q^T A Q onto the block-triangular pattern with a repeated
  // leading eigenvalue.
  Eigen::MatrixXd m = best.transpose() * unit * best;
  const double lambda = 0.5 * (m(0, 0) + m(1, 1));
  m(0, 0) = lambda;
  m(1, 1) = lambda;
  for (int i = 1; i < n; ++i) m(i, 0) = 0.0;
  for (int i = 2; i < n; ++i) m(i, 1) = 0.0;
  Eigen::MatrixXd b = fro * (best * m * best.transpose());
  const double dist = (a - b).norm();
  return {std::move(b), fro * lambda, dist};
}

double real_eigen_condition_lower(const Eigen::MatrixXd& a, int restarts, int iters,
                                  RngStream& rng) {
  const double fro = a.norm();
  require(fro > 0.0, "real_eigen_condition_lower: zero matrix");
  const DoubleEigenWitness w = nearest_double_eigen(a, restarts, iters, rng);
  const double value = std::sqrt(2.0) * fro / w.distance;
  return (w.distance > 0.0 && value < kConditionCap) ? value : kConditionCap;
}

Eigen::MatrixXd tangent_basis(std::span<const double> zeta) {
  const int n1 = static_cast<int>(zeta.size());
  require(n1 >= 2, "tangent_basis: need at least two coordinates");
  Eigen::Map<const Eigen::VectorXd> z(zeta.data(), n1);
  const Eigen::MatrixXd column = z;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(column);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n1 - 1);
}

namespace {

// D^{-1/2} Df(zeta)|_{T_zeta}, D = diag(d_i).
Eigen::MatrixXd weighted_restricted_derivative(const PolySystem& f, const SpherePoint& zeta) {
  const Eigen::MatrixXd restricted = f.jacobian(zeta.coords()) * tangent_basis(zeta.coords());
  Eigen::MatrixXd w = restricted;
  const std::vector<int> d = f.degrees();
  for (int i = 0; i < f.n(); ++i) w.row(i) /= std::sqrt(static_cast<double>(d[i]));
  return w;
}

void require_zero(const PolySystem& f, const SpherePoint& zeta, double norm, const char* what) {
  require(zeta.dim() == f.n(), "condition: zero must lie on S^n for a system of n forms");
  if (f.evaluate(zeta.coords()).norm() > kZeroResidual * norm) throw std::domain_error(what);
}

}  // namespace

double mu_norm(const PolySystem& f, const SpherePoint& zeta) {
  const double norm = weyl_norm(f);
  require(norm > 0.0, "mu_norm: zero system");
  require_zero(f, zeta, norm, "mu_norm: zeta is not a zero of f");
  const Eigen::MatrixXd w = weighted_restricted_derivative(f, zeta);
  const double smin = singular_values(w).minCoeff();
  if (smin <= 1e-12 * norm) return kInf;
  return norm / smin;
}

double mu_norm_real_lower(const PolySystem& f, const std::vector<SpherePoint>& zeros) {
  require(!zeros.empty(), "mu_norm_real_lower: need at least one zero");
  double best = 0.0;
  for (const auto& z : zeros) best = std::max(best, mu_norm(f, z));
  return best;
}

double projective_distance(const PolySystem& f, const PolySystem& g) {
  const double nf = weyl_norm(f);
  const double ng = weyl_norm(g);
  require(nf > 0.0 && ng > 0.0, "projective_distance: zero system");
  const PolySystem fu = f.scaled(1.0 / nf);
  const PolySystem gu = g.scaled(1.0 / ng);
  const double c = weyl_inner(fu, gu);
  // sin of the angle is the length of the component of fu orthogonal to gu.
  std::vector<WeylPolynomial> diff = fu.polys();
  for (int i = 0; i < f.n(); ++i) {
    WeylPolynomial proj = gu[i];
    proj *= c;
    diff[i] -= proj;
  }
  return std::min(1.0, weyl_norm(PolySystem(std::move(diff))));
}

bool cntr_witness_check(const PolySystem& f, const SpherePoint& zeta, const PolySystem& g) {
  require(f.n() == g.n() && f.degrees() == g.degrees(), "cntr_witness_check: shape mismatch");
  require(std::abs(weyl_norm(f) - 1.0) <= kZeroResidual, "cntr_witness_check: ||f|| must be 1");
  require(std::abs(weyl_norm(g) - 1.0) <= kZeroResidual, "cntr_witness_check: ||g|| must be 1");
  require_zero(g, zeta, 1.0, "cntr_witness_check: zeta is not a zero of g");
  const double gmin = singular_values(weighted_restricted_derivative(g, zeta)).minCoeff();
  require(gmin <= kZeroResidual, "cntr_witness_check: zeta is not a multiple zero of g");

  const double mu = mu_norm(f, zeta);
  if (std::isinf(mu)) return true;
  return mu * projective_distance(f, g) >= 1.0 - 1e-6;
}

PolySystem force_zero(const PolySystem& f, const SpherePoint& zeta) {
  require(zeta.dim() == f.n(), "force_zero: dimension mismatch");
  const WeylPolynomial axis = WeylPolynomial::linear_form(zeta.coords());
  std::vector<WeylPolynomial> out = f.polys();
  for (int i = 0; i < f.n(); ++i) {
    const double value = f[i].evaluate(zeta.coords());
    WeylPolynomial power(f.n(), 0);
    power.add_term(MultiIndex(static_cast<std::size_t>(f.num_vars()), 0), 1.0);
    for (int e = 0; e < f[i].degree(); ++e) power = power * axis;
    power *= value;
    out[i] -= power;
  }
  return PolySystem(std::move(out));
}

PolySystem rank_drop_witness(const PolySystem& f, const SpherePoint& zeta) {
  const PolySystem g0 = force_zero(f, zeta);
  const Eigen::MatrixXd basis = tangent_basis(zeta.coords());
  const Eigen::MatrixXd restricted = g0.jacobian(zeta.coords()) * basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(restricted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int n = f.n();
  const Eigen::MatrixXd delta = svd.singularValues()[n - 1] * svd.matrixU().col(n - 1) *
                                svd.matrixV().col(n - 1).transpose();
  const Eigen::MatrixXd lin = delta * basis.transpose();  // n x (n+1)

  const WeylPolynomial axis = WeylPolynomial::linear_form(zeta.coords());
  std::vector<WeylPolynomial> out = g0.polys();
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) row[k] = lin(i, k);
    WeylPolynomial h = WeylPolynomial::linear_form(row);
    if (h.coefficients().empty()) continue;
    for (int e = 1; e < g0[i].degree(); ++e) h = h * axis;
    out[i] -= h;
  }
  PolySystem g(std::move(out));
  const double norm = weyl_norm(g);
  require(norm > 0.0, "rank_drop_witness: witness vanishes identically");
  return g.scaled(1.0 / norm);
}

}  // namespace smoothcond::condition
