#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smoothcond/bounds.hpp"
#include "smoothcond/tubes.hpp"

namespace smoothcond::experiment {

// Batch experiments behind the `estimate` CLI commands. Each run draws cap
// samples in fixed blocks (see run_blocks) and returns rows whose CSV
// rendering is byte-identical for a given seed, whatever the worker count.

/// Stream index reserved for drawing a random cap center.
inline constexpr std::uint64_t kCenterStream = 0xC3A7'0000'0000'0000ULL;
/// First stream index for random curves; instance k uses kCurveStream + k.
inline constexpr std::uint64_t kCurveStream = 0xC0E7'0000'0000'0000ULL;

/// Random plane curve of the given degree (Weyl-Gaussian coefficients),
/// reproducible from (seed, instance).
WeylPolynomial random_curve(int degree, std::uint64_t seed, std::uint64_t instance = 0);

struct CenterSpec {
  enum class Kind { kRandom, kNorth, kFile };
  Kind kind = Kind::kRandom;
  std::string path;  // kFile only

  /// "random", "north", or "file:<path>".
  static CenterSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Resolves a center on S^p. Random centers come from RngStream(seed,
/// kCenterStream). File centers are normalized; `warning` reports a norm
/// that deviated by more than 1e-6.
SpherePoint resolve_center(const CenterSpec& spec, int p, std::uint64_t seed,
                           std::string* warning = nullptr);

/// "2,10,100" or "logspace:<lo>:<hi>:<count>" (log-spaced, endpoints
/// included).
std::vector<double> parse_grid(const std::string& text);

struct EigenSearch {
  int restarts = 4;
  int iters = 200;
};

struct SamplingConfig {
  double sigma = 1.0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  CenterSpec center;
};

/// Cap dimension p for problems with an estimator (matrix inversion,
/// Moore-Penrose, real eigenvalues). Throws std::invalid_argument otherwise.
int estimable_dimension(const bounds::ProblemDescriptor& problem);

/// Condition number covered by the tail bound for `problem`, evaluated on a
/// sphere point: kappa_F, kappa_F^dagger, or ||A||_F / dist(A, Sigma) for real
/// eigenvalues (the lower estimate, without the sqrt(2) factor).
double conic_condition(const bounds::ProblemDescriptor& problem, const SpherePoint& z,
                       RngStream& rng, const EigenSearch& search = {});

struct TailRow {
  double t;
  double empirical;
  double ci_low;
  double ci_high;
  double bound;
  bool dominated;
};

std::vector<TailRow> run_tail(const bounds::ProblemDescriptor& problem, const SamplingConfig& cfg,
                              const std::vector<double>& t_grid, const EigenSearch& search = {});

struct LogmeanRow {
  double empirical_mean_ln;
  double ci_low;
  double ci_high;
  double bound;
  bool dominated;
};

/// Mean of ln kappa over cap samples against the per-problem expectation
/// bound. For real eigenvalues kappa is sqrt(2) ||A||_F / d (lower estimate).
/// The 99% interval is the normal approximation.
LogmeanRow run_logmean(const bounds::ProblemDescriptor& problem, const SamplingConfig& cfg,
                       const EigenSearch& search = {});

struct TubeRow {
  double eps;
  double empirical_ratio;
  double ci_low;
  double ci_high;
  double bound;
  bool dominated;
};

std::vector<TubeRow> run_tube(const Variety& variety, const SamplingConfig& cfg,
                              const std::vector<double>& eps_grid);

std::string to_csv(const std::vector<TailRow>& rows);
std::string to_csv(const LogmeanRow& row);
std::string to_csv(const std::vector<TubeRow>& rows);

}  // namespace smoothcond::experiment
