// smoothcond: bounds, Monte Carlo estimates and verification suites.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 an estimate
// produced a row the bound does not dominate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smoothcond/bounds.hpp"
#include "smoothcond/experiment.hpp"
#include "smoothcond/io.hpp"
#include "smoothcond/parallel.hpp"
#include "smoothcond/tubes.hpp"
#include "smoothcond/verify.hpp"

using nlohmann::json;
using namespace smoothcond;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string six_digits(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", x);
  return buf;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw UsageError("'" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

// --- problem flags ----------------------------------------------------------

struct ProblemFlags {
  std::string name;
  int n = 0;
  int rows = 0;
  int cols = 0;
  std::string degrees;

  void add_to(CLI::App* app, bool required) {
    auto* opt = app->add_option("--problem", name,
                                "matrix-inversion | moore-penrose | eigen-real | eigen-complex | polysys");
    if (required) opt->required();
    app->add_option("--n", n, "matrix size n, or the number of equations for polysys");
    app->add_option("--rows", rows, "rows l of a Moore-Penrose input (l >= m)");
    app->add_option("--cols", cols, "columns m of a Moore-Penrose input");
    app->add_option("--degrees", degrees, "comma-separated degrees of a polynomial system");
  }

  bounds::ProblemDescriptor build() const {
    auto need = [](bool ok, const char* what) {
      if (!ok) throw UsageError(what);
    };
    if (name == "matrix-inversion") {
      need(n >= 1, "matrix-inversion needs --n >= 1");
      return bounds::MatrixInversion{n};
    }
    if (name == "moore-penrose") {
      need(rows >= 1 && cols >= 1 && rows >= cols, "moore-penrose needs --rows >= --cols >= 1");
      return bounds::MoorePenrose{rows, cols};
    }
    if (name == "eigen-real") {
      need(n >= 2, "eigen-real needs --n >= 2");
      return bounds::EigenReal{n};
    }
    if (name == "eigen-complex") {
      need(n >= 2, "eigen-complex needs --n >= 2");
      return bounds::EigenComplex{n};
    }
    if (name == "polysys") {
      need(!degrees.empty(), "polysys needs --degrees");
      return bounds::PolySystemShape{parse_int_list(degrees)};
    }
    throw UsageError("unknown problem '" + name + "'");
  }

  json to_json() const {
    json j{{"problem", name}};
    if (n) j["n"] = n;
    if (rows) j["rows"] = rows;
    if (cols) j["cols"] = cols;
    if (!degrees.empty()) j["degrees"] = degrees;
    return j;
  }
};

// --- bounds -----------------------------------------------------------------

struct BoundsFlags {
  int p = 0;
  int d = 0;
  double sigma = 1.0;
  double t = 0.0;
  double eps = 0.0;
  std::string mode = "tail";
  bool smooth = false;
  bool as_json = false;
  ProblemFlags problem;
};

int emit_bound(const BoundsFlags& f, json params, std::optional<double> value) {
  if (f.as_json) {
    json out{{"params", std::move(params)}};
    out["value"] = value ? json(*value) : json(nullptr);
    if (!value) out["applicable"] = false;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << (value ? six_digits(*value) : std::string("not applicable")) << "\n";
  }
  return 0;
}

json pd_params(const BoundsFlags& f) { return json{{"p", f.p}, {"d", f.d}, {"sigma", f.sigma}}; }

void add_bounds(CLI::App& app, BoundsFlags& f, std::function<int()>& action) {
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a closed-form bound");
  bounds_cmd->require_subcommand(1);

  auto common = [&](CLI::App* c, bool needs_pd) {
    auto* p = c->add_option("--p", f.p, "sphere dimension p");
    auto* d = c->add_option("--d", f.d, "degree bound d");
    if (needs_pd) {
      p->required();
      d->required();
    }
    c->add_option("--sigma", f.sigma, "cap radius sigma in (0, 1]")->capture_default_str();
    c->add_flag("--json", f.as_json, "print {params, value} as JSON");
  };

  auto* tail = bounds_cmd->add_subcommand("tail", "Tail bound on Prob(C >= t)");
  common(tail, true);
  tail->add_option("--t", f.t, "threshold t >= 1")->required();
  tail->callback([&] {
    action = [&] {
      json params = pd_params(f);
      params["t"] = f.t;
      return emit_bound(f, params, bounds::tail_bound(f.p, f.d, f.sigma, f.t));
    };
  });

  auto* expectation = bounds_cmd->add_subcommand("expectation", "Bound on E ln C");
  common(expectation, false);
  f.problem.add_to(expectation, false);
  expectation->callback([&] {
    action = [&] {
      if (!f.problem.name.empty()) {
        json params = f.problem.to_json();
        params["sigma"] = f.sigma;
        return emit_bound(f, params,
                          bounds::application_bound(f.problem.build(), f.sigma, 1.0,
                                                    bounds::Mode::kExpectation));
      }
      if (f.p == 0 || f.d == 0) throw UsageError("expectation needs --p and --d, or --problem");
      return emit_bound(f, pd_params(f), bounds::expectation_bound(f.p, f.d, f.sigma));
    };
  });

  auto* tube = bounds_cmd->add_subcommand("tube", "Bound on vol(T(W, eps) in cap) / vol(cap)");
  common(tube, true);
  tube->add_option("--eps", f.eps, "tube radius eps in (0, 1]")->required();
  tube->add_flag("--smooth", f.smooth, "bound the tube volume around a smooth hypersurface instead");
  tube->callback([&] {
    action = [&] {
      json params = pd_params(f);
      params["eps"] = f.eps;
      params["smooth"] = f.smooth;
      return emit_bound(f, params,
                        f.smooth ? bounds::smooth_tube_bound(f.p, f.d, f.sigma, f.eps)
                                 : bounds::tube_ratio_bound(f.p, f.d, f.sigma, f.eps));
    };
  });

  auto* linear = bounds_cmd->add_subcommand("linear", "Linear tube bound for small eps");
  common(linear, true);
  linear->add_option("--eps", f.eps, "tube radius eps in (0, 1]")->required();
  linear->callback([&] {
    action = [&] {
      json params = pd_params(f);
      params["eps"] = f.eps;
      return emit_bound(f, params, bounds::linear_tail_bound(f.p, f.d, f.sigma, f.eps));
    };
  });

  auto* application = bounds_cmd->add_subcommand("application", "Bound for a named problem");
  application->add_option("--sigma", f.sigma, "cap radius sigma in (0, 1]")->capture_default_str();
  application->add_option("--t", f.t, "threshold t >= 1 (tail mode)");
  application->add_option("--mode", f.mode, "tail | expectation")
      ->check(CLI::IsMember({"tail", "expectation"}))
      ->capture_default_str();
  application->add_flag("--json", f.as_json, "print {params, value} as JSON");
  f.problem.add_to(application, true);
  application->callback([&] {
    action = [&] {
      const bool tail_mode = f.mode == "tail";
      if (tail_mode && f.t == 0.0) throw UsageError("tail mode needs --t");
      json params = f.problem.to_json();
      params["sigma"] = f.sigma;
      params["mode"] = f.mode;
      if (tail_mode) params["t"] = f.t;
      const auto shape = bounds::problem_shape(f.problem.build());
      params["shape_p"] = shape.p;
      params["shape_d"] = shape.d;
      return emit_bound(f, params,
                        bounds::application_bound(f.problem.build(), f.sigma, tail_mode ? f.t : 1.0,
                                                  tail_mode ? bounds::Mode::kTail
                                                            : bounds::Mode::kExpectation));
    };
  });
}

// --- estimate ---------------------------------------------------------------

struct EstimateFlags {
  ProblemFlags problem;
  double sigma = 1.0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out;
  std::string center = "random";
  std::string center_file;
  std::string t_grid = "logspace:2:1000:6";
  std::string eps_grid = "logspace:0.01:0.5:6";
  std::string variety;
  int p = 0;
  int m = -1;
  std::string curve;
  int degree = 2;
  experiment::EigenSearch search;
};

void add_sampling_flags(CLI::App* c, EstimateFlags& f) {
  c->add_option("--sigma", f.sigma, "cap radius sigma in (0, 1]")->capture_default_str();
  c->add_option("--samples", f.samples, "number of cap samples")->capture_default_str();
  c->add_option("--seed", f.seed, "master seed")->capture_default_str();
  c->add_option("--workers", f.workers, "worker threads (default: SMOOTHCOND_WORKERS or all cores)");
  c->add_option("--out", f.out, "output prefix; writes <out>.csv and <out>.manifest.json")->required();
  c->add_option("--center", f.center, "random | north | file")->capture_default_str();
  c->add_option("--center-file", f.center_file, "JSON array used with --center file");
}

experiment::SamplingConfig sampling_config(const EstimateFlags& f, int p) {
  experiment::SamplingConfig cfg;
  cfg.sigma = f.sigma;
  cfg.samples = f.samples;
  cfg.seed = f.seed;
  cfg.workers = f.workers > 0 ? f.workers : default_workers();
  if (f.center == "file") {
    if (f.center_file.empty()) throw UsageError("--center file needs --center-file");
    cfg.center = experiment::CenterSpec{experiment::CenterSpec::Kind::kFile, f.center_file};
  } else {
    cfg.center = experiment::CenterSpec::parse(f.center);
  }
  if (cfg.center.kind == experiment::CenterSpec::Kind::kFile) {
    std::string warning;
    experiment::resolve_center(cfg.center, p, cfg.seed, &warning);
    if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
  }
  return cfg;
}

json sampling_params(const EstimateFlags& f, const experiment::SamplingConfig& cfg) {
  json j{{"sigma", f.sigma}, {"samples", f.samples}, {"seed", f.seed},
         {"workers", cfg.workers}, {"center", cfg.center.to_string()}};
  return j;
}

void write_outputs(const std::string& prefix, const std::string& csv, const json& manifest) {
  std::ofstream c(prefix + ".csv", std::ios::binary);
  if (!c) throw std::runtime_error("cannot write " + prefix + ".csv");
  c << csv;
  std::ofstream m(prefix + ".manifest.json");
  if (!m) throw std::runtime_error("cannot write " + prefix + ".manifest.json");
  m << manifest.dump(2) << "\n";
}

json make_manifest(const std::string& command_line, json params,
                   const experiment::SamplingConfig& cfg, double seconds) {
  return json{{"command_line", command_line},
              {"parameters", std::move(params)},
              {"master_seed", cfg.seed},
              {"worker_count", cfg.workers},
              {"sample_count", cfg.samples},
              {"wall_time_seconds", seconds},
              {"artifact_version", SMOOTHCOND_VERSION}};
}

template <class Rows>
int finish_estimate(const EstimateFlags& f, const std::string& command_line, json params,
                    const experiment::SamplingConfig& cfg, double seconds, const Rows& rows,
                    bool all_dominated) {
  write_outputs(f.out, experiment::to_csv(rows), make_manifest(command_line, std::move(params), cfg, seconds));
  std::cout << "wrote " << f.out << ".csv and " << f.out << ".manifest.json\n";
  if (!all_dominated) {
    std::cerr << "bound violation: a row has dominated=false\n";
    return kExitViolation;
  }
  return 0;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Variety build_variety(const EstimateFlags& f, json& params) {
  params["variety"] = f.variety;
  if (f.variety == "subsphere") {
    if (f.p < 1) throw UsageError("subsphere needs --p >= 1");
    const int m = f.m < 0 ? f.p - 1 : f.m;
    params["p"] = f.p;
    params["m"] = m;
    return Variety(Subsphere{f.p, m});
  }
  if (f.variety == "determinant") {
    if (f.problem.n < 1) throw UsageError("determinant needs --n >= 1");
    params["n"] = f.problem.n;
    return Variety(Determinant{f.problem.n});
  }
  if (f.variety == "curve") {
    if (f.curve.empty()) throw UsageError("curve needs --curve <file> or --curve random");
    params["curve"] = f.curve;
    if (f.curve == "random") {
      params["degree"] = f.degree;
      return Variety(std::make_shared<const CurveVariety>(experiment::random_curve(f.degree, f.seed)));
    }
    return Variety(std::make_shared<const CurveVariety>(io::curve_from_json(io::read_json_file(f.curve))));
  }
  throw UsageError("unknown variety '" + f.variety + "' (subsphere | determinant | curve)");
}

void add_estimate(CLI::App& app, EstimateFlags& f, const std::string& command_line,
                  std::function<int()>& action) {
  auto* est = app.add_subcommand("estimate", "Monte Carlo estimate against a bound");
  est->require_subcommand(1);

  auto eigen_flags = [&](CLI::App* c) {
    c->add_option("--eigen-restarts", f.search.restarts, "restarts of the double-eigenvalue search")
        ->capture_default_str();
    c->add_option("--eigen-iters", f.search.iters, "iterations per restart")->capture_default_str();
  };

  auto* tail = est->add_subcommand("tail", "Empirical Prob(kappa >= t) on a t grid");
  f.problem.add_to(tail, true);
  add_sampling_flags(tail, f);
  eigen_flags(tail);
  tail->add_option("--t-grid", f.t_grid, "comma list or logspace:<lo>:<hi>:<count>")->capture_default_str();
  tail->callback([&] {
    action = [&] {
      const auto problem = f.problem.build();
      const auto cfg = sampling_config(f, experiment::estimable_dimension(problem));
      json params = f.problem.to_json();
      params.update(sampling_params(f, cfg));
      params["t_grid"] = f.t_grid;
      const auto grid = experiment::parse_grid(f.t_grid);
      const auto start = std::chrono::steady_clock::now();
      const auto rows = experiment::run_tail(problem, cfg, grid, f.search);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.dominated;
      return finish_estimate(f, command_line, params, cfg, seconds_since(start), rows, ok);
    };
  });

  auto* logmean = est->add_subcommand("logmean", "Empirical mean of ln kappa");
  f.problem.add_to(logmean, true);
  add_sampling_flags(logmean, f);
  eigen_flags(logmean);
  logmean->callback([&] {
    action = [&] {
      const auto problem = f.problem.build();
      const auto cfg = sampling_config(f, experiment::estimable_dimension(problem));
      json params = f.problem.to_json();
      params.update(sampling_params(f, cfg));
      const auto start = std::chrono::steady_clock::now();
      const auto row = experiment::run_logmean(problem, cfg, f.search);
      return finish_estimate(f, command_line, params, cfg, seconds_since(start), row, row.dominated);
    };
  });

  auto* tube = est->add_subcommand("tube", "Empirical tube-to-cap volume ratio on an eps grid");
  tube->add_option("--variety", f.variety, "subsphere | determinant | curve")->required();
  tube->add_option("--p", f.p, "ambient sphere dimension (subsphere)");
  tube->add_option("--m", f.m, "subsphere dimension (default p-1)");
  tube->add_option("--n", f.problem.n, "matrix size (determinant)");
  tube->add_option("--curve", f.curve, "curve JSON file, or 'random'");
  tube->add_option("--degree", f.degree, "degree of a random curve")->capture_default_str();
  tube->add_option("--eps-grid", f.eps_grid, "comma list or logspace:<lo>:<hi>:<count>")
      ->capture_default_str();
  add_sampling_flags(tube, f);
  tube->callback([&] {
    action = [&] {
      json params;
      const Variety variety = build_variety(f, params);
      const auto cfg = sampling_config(f, variety.ambient_dim());
      params.update(sampling_params(f, cfg));
      params["eps_grid"] = f.eps_grid;
      const auto grid = experiment::parse_grid(f.eps_grid);
      const auto start = std::chrono::steady_clock::now();
      const auto rows = experiment::run_tube(variety, cfg, grid);
      if (f.variety == "subsphere" && f.sigma == 1.0 &&
          cfg.center.kind == experiment::CenterSpec::Kind::kNorth) {
        const int m = f.m < 0 ? f.p - 1 : f.m;
        for (const auto& r : rows) {
          std::cout << "eps " << io::format_double(r.eps) << ": exact ratio "
                    << io::format_double(tubes::subsphere_hemisphere_ratio(f.p, m, r.eps))
                    << ", estimate " << io::format_double(r.empirical_ratio) << "\n";
        }
      }
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.dominated;
      return finish_estimate(f, command_line, params, cfg, seconds_since(start), rows, ok);
    };
  });
}

// --- verify -----------------------------------------------------------------

struct VerifyFlags {
  int p = 0;
  int i = 0;
  double alpha = 0.6;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 7;
  int workers = 0;
  int trials = 1000;
  int n = 2;
  int n_min = 2;
  int n_max = 5;
  int max_p = 20;
  double tol = 1e-10;
  int directions = 10000;
  std::string ps;
  std::string degrees = "2,3,4";
  bool verbose = false;
};

int report(const std::vector<verify::Report>& reports, bool verbose) {
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << r.table(verbose || r.cases.size() <= 64);
    ok = ok && r.pass();
  }
  std::cout << (ok ? "overall: PASS" : "overall: FAIL") << "\n";
  return ok ? 0 : kExitVerifyFailed;
}

void add_verify(CLI::App& app, VerifyFlags& f, std::function<int()>& action) {
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->require_subcommand(1);
  auto verbose = [&](CLI::App* c) { c->add_flag("--verbose", f.verbose, "list every case"); };

  auto* kin = ver->add_subcommand("kinematic", "Kinematic formula on geodesic spheres");
  kin->add_option("--p", f.p, "single case: sphere dimension (default: full grid)");
  kin->add_option("--i", f.i, "single case: curvature index i < p-1");
  kin->add_option("--alpha", f.alpha, "single case: cap angle in (0, pi/2]");
  kin->add_option("--samples", f.samples, "Monte Carlo samples")->capture_default_str();
  kin->add_option("--seed", f.seed, "master seed")->capture_default_str();
  kin->add_option("--workers", f.workers, "worker threads");
  verbose(kin);
  kin->callback([&] {
    action = [&] {
      verify::KinematicGrid grid;
      grid.samples = f.samples;
      grid.seed = f.seed;
      grid.workers = f.workers > 0 ? f.workers : default_workers();
      if (f.p > 0) {
        if (f.i < 0 || f.i >= f.p - 1) throw UsageError("need 0 <= --i < --p - 1");
        grid.ps = {f.p};
        grid.alphas = {f.alpha};
        grid.mc_cases = {{f.p, f.i}};
        grid.mc_alphas = {f.alpha};
      }
      return report({verify::kinematic(grid)}, f.verbose);
    };
  });

  auto* weyl = ver->add_subcommand("weyltube", "Weyl tube bound on bands around geodesic spheres");
  weyl->add_option("--p", f.ps, "comma list of dimensions")->default_str("2,3,4,6");
  verbose(weyl);
  weyl->callback([&] {
    action = [&] {
      return report({verify::weyltube(f.ps.empty() ? std::vector<int>{2, 3, 4, 6} : parse_int_list(f.ps))},
                    f.verbose);
    };
  });

  auto* jint = ver->add_subcommand("jintegrals", "J-integral recurrence vs quadrature, and its bounds");
  jint->add_option("--max-p", f.max_p, "largest p")->capture_default_str();
  jint->add_option("--tol", f.tol, "absolute tolerance")->capture_default_str();
  verbose(jint);
  jint->callback([&] {
    action = [&] {
      if (f.max_p < 1) throw UsageError("--max-p must be positive");
      return report({verify::jintegrals(f.max_p, f.tol), verify::j_inequalities(f.max_p)}, f.verbose);
    };
  });

  auto* ey = ver->add_subcommand("eckart-young", "Distance to singular matrices");
  ey->add_option("--trials", f.trials, "random matrices")->capture_default_str();
  ey->add_option("--n-min", f.n_min, "smallest size")->capture_default_str();
  ey->add_option("--n-max", f.n_max, "largest size")->capture_default_str();
  ey->add_option("--seed", f.seed, "master seed")->capture_default_str();
  verbose(ey);
  ey->callback([&] {
    action = [&] {
      if (f.n_min < 1 || f.n_max < f.n_min) throw UsageError("need 1 <= --n-min <= --n-max");
      return report({verify::eckart_young(f.trials, f.n_min, f.n_max, f.seed)}, f.verbose);
    };
  });

  auto* wil = ver->add_subcommand("wilkinson", "Eigenvalue condition vs distance to the discriminant");
  wil->add_option("--n", f.n, "matrix size (only 2 has a brute-force oracle)")->capture_default_str();
  wil->add_option("--trials", f.trials, "random matrices")->capture_default_str();
  wil->add_option("--seed", f.seed, "master seed")->capture_default_str();
  wil->add_option("--directions", f.directions, "oracle scan size")->capture_default_str();
  verbose(wil);
  wil->callback([&] {
    action = [&] {
      if (f.n != 2) throw UsageError("wilkinson supports --n 2 only");
      return report({verify::wilkinson(f.trials, f.seed, f.directions)}, f.verbose);
    };
  });

  auto* cn = ver->add_subcommand("cntr", "Condition number theorem witnesses and closed cases");
  cn->add_option("--trials", f.trials, "witness triples")->capture_default_str();
  cn->add_option("--degrees", f.degrees, "comma list of degrees")->capture_default_str();
  cn->add_option("--seed", f.seed, "master seed")->capture_default_str();
  verbose(cn);
  cn->callback([&] {
    action = [&] {
      return report({verify::cntr(f.trials, parse_int_list(f.degrees), f.seed),
                     verify::mu_closed_cases(100, f.seed)},
                    f.verbose);
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  std::string command_line;
  for (int k = 0; k < argc; ++k) command_line += (k ? " " : "") + std::string(argv[k]);

  CLI::App app{"Smoothed condition number bounds, estimates and verifications"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SMOOTHCOND_VERSION);

  std::function<int()> action;
  BoundsFlags bounds_flags;
  EstimateFlags estimate_flags;
  VerifyFlags verify_flags;
  add_bounds(app, bounds_flags, action);
  add_estimate(app, estimate_flags, command_line, action);
  add_verify(app, verify_flags, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    return action ? action() : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
