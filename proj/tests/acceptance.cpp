// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "smoothcond/bounds.hpp"
#include "smoothcond/experiment.hpp"
#include "smoothcond/io.hpp"
#include "smoothcond/tubes.hpp"
#include "smoothcond/verify.hpp"

using namespace smoothcond;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome from_report(const verify::Report& r, double seconds, double limit) {
  const std::size_t n = r.cases.size();
  const bool fast = limit <= 0 || seconds < limit;
  std::string detail = std::to_string(n - r.failures()) + "/" + std::to_string(n) + " cases";
  if (limit > 0) detail += fmt(", %.2f s (limit %.0f s)", seconds, limit);
  if (!r.pass()) std::fputs(r.table().c_str(), stdout);
  return {r.pass() && fast && n > 0, detail};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome jintegrals() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = verify::jintegrals(20, 1e-10);
  return from_report(r, seconds_since(t0), 5);
}

Outcome j_inequalities() { return from_report(verify::j_inequalities(20), 0, 0); }

Outcome kinematic() {
  const auto t0 = std::chrono::steady_clock::now();
  verify::KinematicGrid grid;
  grid.workers = default_workers();
  const auto r = verify::kinematic(grid);
  return from_report(r, seconds_since(t0), 120);
}

Outcome subsphere_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0, total = 0;
  for (int p : {2, 3, 5}) {
    const Variety v(Subsphere{p, p - 1});
    const Cap cap(SpherePoint::north(p), 1.0);
    for (double eps : {0.1, 0.3, 0.6}) {
      const McEstimate e = tubes::estimate_tube_cap_ratio(v, cap, eps, 100000, 2024, default_workers());
      const double exact = tubes::subsphere_hemisphere_ratio(p, p - 1, eps);
      const bool in = e.ci_low <= exact && exact <= e.ci_high;
      if (!in) {
        std::printf("  p=%d eps=%g: CI [%.6f, %.6f] misses %.6f\n", p, eps, e.ci_low, e.ci_high, exact);
      }
      ok += in;
      ++total;
    }
  }
  const double s = seconds_since(t0);
  return {ok == total && s < 60,
          std::to_string(ok) + "/" + std::to_string(total) + " intervals contain the exact ratio" +
              fmt(", %.2f s (limit 60 s)", s)};
}

Outcome weyltube() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = verify::weyltube({2, 3, 4, 6});
  return from_report(r, seconds_since(t0), 5);
}

Outcome tail_dominance() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = experiment::parse_grid("logspace:2:1000:6");
  int ok = 0, total = 0;
  for (int n : {2, 3}) {
    for (double sigma : {0.25, 1.0}) {
      for (const char* center : {"north", "random"}) {
        experiment::SamplingConfig cfg;
        cfg.sigma = sigma;
        cfg.samples = 100000;
        cfg.seed = 1;
        cfg.workers = default_workers();
        cfg.center = experiment::CenterSpec::parse(center);
        for (const auto& row : experiment::run_tail(bounds::MatrixInversion{n}, cfg, grid)) {
          const bool dom = row.ci_low <= row.bound;
          if (!dom) {
            std::printf("  n=%d sigma=%g center=%s t=%g: ci_low %.6g > bound %.6g\n", n, sigma, center,
                        row.t, row.ci_low, row.bound);
          }
          ok += dom;
          ++total;
        }
      }
    }
  }
  const double s = seconds_since(t0);
  return {ok == total && s < 180,
          std::to_string(ok) + "/" + std::to_string(total) + " grid points dominated" +
              fmt(", %.2f s (limit 180 s)", s)};
}

Outcome logmean_dominance() {
  struct Case {
    bounds::ProblemDescriptor problem;
    double reference;
  };
  const double ln2 = std::log(2.0), ln3 = std::log(3.0);
  const std::vector<Case> cases = {{bounds::MatrixInversion{2}, 6 * ln2 + 5.5},
                                   {bounds::MatrixInversion{3}, 6 * ln3 + 5.5},
                                   {bounds::MoorePenrose{3, 2}, 2 * ln3 + 4 * ln2 + 5.5}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    experiment::SamplingConfig cfg;
    cfg.sigma = 1.0;  // kappa is even in A, so the hemisphere law equals the sphere law
    cfg.samples = 100000;
    cfg.seed = 1;
    cfg.workers = default_workers();
    const auto row = experiment::run_logmean(c.problem, cfg);
    const bool ok = row.empirical_mean_ln <= c.reference && std::abs(row.bound - c.reference) < 1e-12;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += bounds::problem_name(c.problem) + fmt(" %.4f <= %.4f", row.empirical_mean_ln, c.reference);
  }
  return {pass, detail};
}

Outcome tube_dominance() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Variety>> varieties = {{"determinant(2)", Variety(Determinant{2})}};
  for (int k = 0; k < 3; ++k) {
    varieties.emplace_back("curve#" + std::to_string(k),
                           Variety(std::make_shared<const CurveVariety>(experiment::random_curve(2, 1, k))));
  }
  const auto eps = experiment::parse_grid("logspace:0.01:0.5:6");
  int ok = 0, total = 0;
  for (const auto& [name, v] : varieties) {
    for (double sigma : {0.25, 1.0}) {
      for (const char* center : {"north", "random"}) {
        experiment::SamplingConfig cfg;
        cfg.sigma = sigma;
        cfg.samples = 100000;
        cfg.seed = 1;
        cfg.workers = default_workers();
        cfg.center = experiment::CenterSpec::parse(center);
        for (const auto& row : experiment::run_tube(v, cfg, eps)) {
          const bool dom = row.ci_low <= row.bound;
          if (!dom) {
            std::printf("  %s sigma=%g center=%s eps=%g: ci_low %.6g > bound %.6g\n", name.c_str(), sigma,
                        center, row.eps, row.ci_low, row.bound);
          }
          ok += dom;
          ++total;
        }
      }
    }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " grid points dominated" +
                           fmt(", %.2f s", seconds_since(t0))};
}

Outcome eckart_young() { return from_report(verify::eckart_young(1000, 2, 5, 7), 0, 0); }

Outcome wilkinson() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = verify::wilkinson(1000, 7, 10000);
  return from_report(r, seconds_since(t0), 60);
}

Outcome cntr() { return from_report(verify::cntr(1000, {2, 3, 4}, 7), 0, 0); }

Outcome mu_closed() { return from_report(verify::mu_closed_cases(100, 7), 0, 0); }

Outcome reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::current_path() / "acceptance_repro";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"tail", "estimate tail --problem matrix-inversion --n 2 --sigma 0.5 --samples 20000 --seed 5 --center random"},
      {"logmean", "estimate logmean --problem moore-penrose --rows 3 --cols 2 --samples 20000 --seed 5"},
      {"eigen", "estimate tail --problem eigen-real --n 2 --samples 3000 --seed 5"},
      {"tube", "estimate tube --variety curve --curve random --degree 2 --sigma 0.5 --samples 20000 --seed 5"},
  };
  int ok = 0;
  for (const auto& [name, args] : commands) {
    std::string csv[2];
    bool ran = true;
    for (int k = 0; k < 2; ++k) {
      const int workers = k == 0 ? 1 : 4;
      const fs::path out = dir / (name + "_w" + std::to_string(workers));
      const std::string cmd = std::string("\"") + SMOOTHCOND_CLI + "\" " + args + " --workers " +
                              std::to_string(workers) + " --out \"" + out.string() + "\" > /dev/null";
      const int rc = std::system(cmd.c_str());
      ran = ran && rc == 0;
      csv[k] = slurp(out.string() + ".csv");
    }
    const bool same = ran && !csv[0].empty() && csv[0] == csv[1];
    if (!same) std::printf("  %s: %s\n", name.c_str(), ran ? "CSV differs" : "command failed");
    ok += same;
  }
  return {ok == static_cast<int>(commands.size()),
          std::to_string(ok) + "/" + std::to_string(commands.size()) +
              " estimate commands byte-identical for --workers 1 and 4"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"J-integral recurrence vs quadrature", jintegrals},
      {"J-integral inequalities", j_inequalities},
      {"kinematic formula on geodesic spheres", kinematic},
      {"subsphere tube exactness", subsphere_exactness},
      {"Weyl tube bound", weyltube},
      {"tail-bound dominance", tail_dominance},
      {"log-mean dominance", logmean_dominance},
      {"tube-ratio dominance", tube_dominance},
      {"Eckart-Young oracle", eckart_young},
      {"eigenvalue condition vs discriminant distance", wilkinson},
      {"condition number theorem witnesses", cntr},
      {"mu_norm closed cases", mu_closed},
      {"worker-count reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %zu: %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
