#include "smoothcond/experiment.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smoothcond/condition.hpp"
#include "smoothcond/io.hpp"

namespace smoothcond::experiment {

namespace {

void expect(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

Eigen::MatrixXd reshape(const SpherePoint& z, int rows, int cols) {
  Eigen::MatrixXd a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = z[static_cast<std::size_t>(i * cols + j)];
  }
  return a;
}

Cap make_cap(const bounds::ProblemDescriptor& problem, const SamplingConfig& cfg, int p) {
  (void)problem;
  expect(cfg.sigma > 0.0 && cfg.sigma <= 1.0, "sigma must lie in (0, 1]");
  expect(cfg.samples >= 1, "samples must be positive");
  return Cap(resolve_center(cfg.center, p, cfg.seed), cfg.sigma);
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

CenterSpec CenterSpec::parse(const std::string& text) {
  if (text == "random") return {Kind::kRandom, {}};
  if (text == "north") return {Kind::kNorth, {}};
  if (text.rfind("file:", 0) == 0 && text.size() > 5) return {Kind::kFile, text.substr(5)};
  throw std::invalid_argument("center must be random, north, or file:<path>");
}

std::string CenterSpec::to_string() const {
  switch (kind) {
    case Kind::kRandom:
      return "random";
    case Kind::kNorth:
      return "north";
    case Kind::kFile:
      return "file:" + path;
  }
  return {};
}

SpherePoint resolve_center(const CenterSpec& spec, int p, std::uint64_t seed,
                           std::string* warning) {
  switch (spec.kind) {
    case CenterSpec::Kind::kNorth:
      return SpherePoint::north(p);
    case CenterSpec::Kind::kRandom: {
      RngStream rng(seed, kCenterStream);
      return sampling::sample_uniform_sphere(p, rng);
    }
    case CenterSpec::Kind::kFile: {
      SpherePoint c = io::center_from_json(io::read_json_file(spec.path), warning);
      expect(c.dim() == p, "center file has dimension " + std::to_string(c.dim()) +
                               ", expected " + std::to_string(p));
      return c;
    }
  }
  throw std::invalid_argument("unknown center kind");
}

WeylPolynomial random_curve(int degree, std::uint64_t seed, std::uint64_t instance) {
  expect(degree >= 1, "curve degree must be positive");
  RngStream rng(seed, kCurveStream + instance);
  return sampling::sample_weyl_polynomial(2, degree, rng);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.rfind("logspace:", 0) == 0) {
    std::istringstream in(text.substr(9));
    std::string lo_s, hi_s, n_s;
    expect(std::getline(in, lo_s, ':') && std::getline(in, hi_s, ':') && std::getline(in, n_s),
           "logspace grid must be logspace:<lo>:<hi>:<count>");
    const double lo = std::stod(lo_s);
    const double hi = std::stod(hi_s);
    const int n = std::stoi(n_s);
    expect(lo > 0.0 && hi > 0.0 && n >= 1, "logspace grid needs positive endpoints and count");
    if (n == 1) return {lo};
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < n; ++i) grid.push_back(std::exp(a + (b - a) * i / (n - 1)));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    expect(used == item.size(), "grid entry '" + item + "' is not a number");
    grid.push_back(v);
  }
  expect(!grid.empty(), "grid is empty");
  return grid;
}

int estimable_dimension(const bounds::ProblemDescriptor& problem) {
  if (std::holds_alternative<bounds::MatrixInversion>(problem) ||
      std::holds_alternative<bounds::MoorePenrose>(problem) ||
      std::holds_alternative<bounds::EigenReal>(problem)) {
    const auto shape = bounds::problem_shape(problem);
    expect(shape.p >= 1, "problem dimension must be at least 1");
    if (std::holds_alternative<bounds::EigenReal>(problem)) {
      expect(std::get<bounds::EigenReal>(problem).n >= 2, "eigen-real needs n >= 2");
    }
    return static_cast<int>(shape.p);
  }
  throw std::invalid_argument("no Monte Carlo estimator for problem " +
                              bounds::problem_name(problem));
}

double conic_condition(const bounds::ProblemDescriptor& problem, const SpherePoint& z,
                       RngStream& rng, const EigenSearch& search) {
  if (const auto* m = std::get_if<bounds::MatrixInversion>(&problem)) {
    return condition::frobenius_condition(reshape(z, m->n, m->n));
  }
  if (const auto* m = std::get_if<bounds::MoorePenrose>(&problem)) {
    return condition::moore_penrose_condition(reshape(z, m->rows, m->cols));
  }
  if (const auto* m = std::get_if<bounds::EigenReal>(&problem)) {
    const Eigen::MatrixXd a = reshape(z, m->n, m->n);
    return condition::real_eigen_condition_lower(a, search.restarts, search.iters, rng) /
           std::sqrt(2.0);
  }
  throw std::invalid_argument("no condition evaluator for problem " + bounds::problem_name(problem));
}

std::vector<TailRow> run_tail(const bounds::ProblemDescriptor& problem, const SamplingConfig& cfg,
                              const std::vector<double>& t_grid, const EigenSearch& search) {
  const int p = estimable_dimension(problem);
  expect(!t_grid.empty(), "t grid is empty");
  for (double t : t_grid) expect(t >= 1.0 && std::isfinite(t), "t values must be finite and >= 1");
  const Cap cap = make_cap(problem, cfg, p);
  const std::vector<double> kappa = tubes::map_cap_samples(
      cap, cfg.samples, cfg.seed, cfg.workers,
      [&](const SpherePoint& z, RngStream& rng) { return conic_condition(problem, z, rng, search); });

  std::vector<TailRow> rows;
  for (double t : t_grid) {
    std::uint64_t hits = 0;
    for (double k : kappa) hits += (k >= t) ? 1 : 0;
    const McEstimate est = proportion_estimate(hits, cfg.samples, cfg.seed);
    const double bound = bounds::application_bound(problem, cfg.sigma, t, bounds::Mode::kTail);
    rows.push_back({t, est.estimate, est.ci_low, est.ci_high, bound, est.ci_low <= bound});
  }
  return rows;
}

LogmeanRow run_logmean(const bounds::ProblemDescriptor& problem, const SamplingConfig& cfg,
                       const EigenSearch& search) {
  const int p = estimable_dimension(problem);
  const Cap cap = make_cap(problem, cfg, p);
  const double factor = std::holds_alternative<bounds::EigenReal>(problem) ? std::sqrt(2.0) : 1.0;

  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  // Per-block sums, merged in block order for reproducibility.
  auto blocks = run_blocks<Moments>(
      cfg.samples, cfg.workers, [&](std::uint64_t b, std::uint64_t, std::uint64_t count) {
        RngStream rng(cfg.seed, b);
        Moments m;
        for (std::uint64_t i = 0; i < count; ++i) {
          const SpherePoint z = sampling::sample_uniform_cap(cap, rng);
          const double v = std::log(factor * conic_condition(problem, z, rng, search));
          m.sum += v;
          m.sum_sq += v * v;
        }
        return m;
      });
  Moments total;
  for (const auto& m : blocks) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }
  const double n = static_cast<double>(cfg.samples);
  const double mean = total.sum / n;
  const double var = n > 1 ? std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  const double half = normal_two_sided_quantile(kDefaultConfidence) * std::sqrt(var / n);
  const double bound = bounds::application_bound(problem, cfg.sigma, 1.0, bounds::Mode::kExpectation);
  return {mean, mean - half, mean + half, bound, mean - half <= bound};
}

std::vector<TubeRow> run_tube(const Variety& variety, const SamplingConfig& cfg,
                              const std::vector<double>& eps_grid) {
  expect(!eps_grid.empty(), "eps grid is empty");
  for (double e : eps_grid) expect(e > 0.0 && e <= 1.0, "eps values must lie in (0, 1]");
  expect(cfg.sigma > 0.0 && cfg.sigma <= 1.0, "sigma must lie in (0, 1]");
  expect(cfg.samples >= 1, "samples must be positive");
  const int p = variety.ambient_dim();
  const Cap cap(resolve_center(cfg.center, p, cfg.seed), cfg.sigma);
  const auto estimates =
      tubes::estimate_tube_cap_ratios(variety, cap, eps_grid, cfg.samples, cfg.seed, cfg.workers);
  std::vector<TubeRow> rows;
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    const double bound = bounds::tube_ratio_bound(p, variety.degree(), cfg.sigma, eps_grid[i]);
    const McEstimate& e = estimates[i];
    rows.push_back({eps_grid[i], e.estimate, e.ci_low, e.ci_high, bound, e.ci_low <= bound});
  }
  return rows;
}

std::string to_csv(const std::vector<TailRow>& rows) {
  std::string out = "t,empirical,ci_low,ci_high,bound,dominated\n";
  for (const auto& r : rows) {
    out += io::format_double(r.t) + ',' + io::format_double(r.empirical) + ',' +
           io::format_double(r.ci_low) + ',' + io::format_double(r.ci_high) + ',' +
           io::format_double(r.bound) + ',' + bool_text(r.dominated) + '\n';
  }
  return out;
}

std::string to_csv(const LogmeanRow& r) {
  return "empirical_mean_ln,ci_low,ci_high,bound,dominated\n" +
         io::format_double(r.empirical_mean_ln) + ',' + io::format_double(r.ci_low) + ',' +
         io::format_double(r.ci_high) + ',' + io::format_double(r.bound) + ',' +
         bool_text(r.dominated) + '\n';
}

std::string to_csv(const std::vector<TubeRow>& rows) {
  std::string out = "eps,empirical_ratio,ci_low,ci_high,bound,dominated\n";
  for (const auto& r : rows) {
    out += io::format_double(r.eps) + ',' + io::format_double(r.empirical_ratio) + ',' +
           io::format_double(r.ci_low) + ',' + io::format_double(r.ci_high) + ',' +
           io::format_double(r.bound) + ',' + bool_text(r.dominated) + '\n';
  }
  return out;
}

}  // namespace smoothcond::experiment
