#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smoothcond/bounds.hpp"
#include "smoothcond/condition.hpp"
#include "smoothcond/experiment.hpp"
#include "smoothcond/sphere_geom.hpp"
#include "smoothcond/tubes.hpp"
#include "smoothcond/verify.hpp"

namespace py = pybind11;
using namespace smoothcond;

namespace {

bounds::ProblemDescriptor problem_from(const std::string& name, int n, int rows, int cols,
                                       const std::vector<int>& degrees) {
  if (name == "matrix-inversion") return bounds::MatrixInversion{n};
  if (name == "moore-penrose") return bounds::MoorePenrose{rows, cols};
  if (name == "eigen-real") return bounds::EigenReal{n};
  if (name == "eigen-complex") return bounds::EigenComplex{n};
  if (name == "polysys") return bounds::PolySystemShape{degrees};
  throw py::value_error("unknown problem " + name);
}

py::dict report_dict(const verify::Report& r) {
  py::dict d;
  d["name"] = r.name;
  d["cases"] = r.cases.size();
  d["failures"] = r.failures();
  d["pass"] = r.pass();
  return d;
}

experiment::SamplingConfig sampling_config(double sigma, std::uint64_t samples, std::uint64_t seed,
                                           int workers, const std::string& center) {
  experiment::SamplingConfig cfg;
  cfg.sigma = sigma;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.center = experiment::CenterSpec::parse(center);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smoothed condition number bounds and Monte Carlo checks";
  m.attr("__version__") = SMOOTHCOND_VERSION;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("sphere_volume", &sphere::sphere_volume, py::arg("p"));
  m.def("j_integral", &sphere::j_integral, py::arg("p"), py::arg("k"), py::arg("alpha"));
  m.def("j_integral_quadrature", &sphere::j_integral_quadrature, py::arg("p"), py::arg("k"),
        py::arg("alpha"));

  m.def("tail_bound", &bounds::tail_bound, py::arg("p"), py::arg("d"), py::arg("sigma"), py::arg("t"));
  m.def("expectation_bound", &bounds::expectation_bound, py::arg("p"), py::arg("d"), py::arg("sigma"));
  m.def("tube_ratio_bound", &bounds::tube_ratio_bound, py::arg("p"), py::arg("d"), py::arg("sigma"),
        py::arg("eps"));
  m.def("smooth_tube_bound", &bounds::smooth_tube_bound, py::arg("p"), py::arg("d"), py::arg("sigma"),
        py::arg("eps"));
  m.def("linear_tail_bound", &bounds::linear_tail_bound, py::arg("p"), py::arg("d"), py::arg("sigma"),
        py::arg("eps"), "None when eps is above the small-eps threshold");
  m.def(
      "application_bound",
      [](const std::string& problem, double sigma, double t, const std::string& mode, int n, int rows,
         int cols, const std::vector<int>& degrees) {
        if (mode != "tail" && mode != "expectation") throw py::value_error("mode must be tail or expectation");
        return bounds::application_bound(problem_from(problem, n, rows, cols, degrees), sigma, t,
                                         mode == "tail" ? bounds::Mode::kTail : bounds::Mode::kExpectation);
      },
      py::arg("problem"), py::arg("sigma") = 1.0, py::arg("t") = 1.0, py::arg("mode") = "expectation",
      py::arg("n") = 0, py::arg("rows") = 0, py::arg("cols") = 0, py::arg("degrees") = std::vector<int>{});

  m.def("frobenius_condition", &condition::frobenius_condition, py::arg("a"));
  m.def("moore_penrose_condition", &condition::moore_penrose_condition, py::arg("a"));
  m.def("eigenvalue_condition", &condition::eigenvalue_condition, py::arg("a"), py::arg("lam"));
  m.def(
      "real_eigen_condition_lower",
      [](const Eigen::MatrixXd& a, int restarts, int iters, std::uint64_t seed) {
        RngStream rng(seed, 0);
        return condition::real_eigen_condition_lower(a, restarts, iters, rng);
      },
      py::arg("a"), py::arg("restarts") = 4, py::arg("iters") = 200, py::arg("seed") = 1);

  m.def(
      "subsphere_tube_ratio",
      [](int p, int m_dim, double sigma, double eps, std::uint64_t samples, std::uint64_t seed, int workers) {
        const Cap cap(SpherePoint::north(p), sigma);
        const McEstimate e =
            tubes::estimate_tube_cap_ratio(Variety(Subsphere{p, m_dim}), cap, eps, samples, seed, workers);
        return py::make_tuple(e.estimate, e.ci_low, e.ci_high);
      },
      py::arg("p"), py::arg("m"), py::arg("sigma"), py::arg("eps"), py::arg("samples") = 100000,
      py::arg("seed") = 1, py::arg("workers") = 1,
      "Monte Carlo (estimate, ci_low, ci_high) for a coordinate subsphere and a cap at e_0");
  m.def("subsphere_hemisphere_ratio", &tubes::subsphere_hemisphere_ratio, py::arg("p"), py::arg("m"),
        py::arg("eps"));

  m.def(
      "estimate_tail",
      [](const std::string& problem, int n, int rows, int cols, double sigma, std::uint64_t samples,
         std::uint64_t seed, int workers, const std::string& center, const std::vector<double>& t_grid) {
        const auto rows_out = experiment::run_tail(problem_from(problem, n, rows, cols, {}),
                                                   sampling_config(sigma, samples, seed, workers, center), t_grid);
        return experiment::to_csv(rows_out);
      },
      py::arg("problem"), py::arg("n") = 0, py::arg("rows") = 0, py::arg("cols") = 0, py::arg("sigma") = 1.0,
      py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("workers") = 1, py::arg("center") = "random",
      py::arg("t_grid") = experiment::parse_grid("logspace:2:1000:6"), "CSV text of the tail estimate");

  m.def("verify_jintegrals", [](int max_p) { return report_dict(verify::jintegrals(max_p)); },
        py::arg("max_p") = 20);
  m.def("verify_weyltube", [] { return report_dict(verify::weyltube()); });
  m.def("verify_eckart_young", [](int trials) { return report_dict(verify::eckart_young(trials)); },
        py::arg("trials") = 1000);
}
