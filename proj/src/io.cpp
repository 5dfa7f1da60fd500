#include "smoothcond/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace smoothcond::io {

namespace {

using nlohmann::json;

void expect(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

WeylPolynomial poly_from_terms(const json& terms, int n, int degree, const std::string& where) {
  expect(terms.is_array(), where + ": expected an array of monomials");
  WeylPolynomial f(n, degree);
  for (const auto& t : terms) {
    expect(t.is_object() && t.contains("alpha") && t.contains("coeff"),
           where + ": monomial needs \"alpha\" and \"coeff\"");
    expect(t["alpha"].is_array(), where + ": \"alpha\" must be an array");
    expect(t["coeff"].is_number(), where + ": \"coeff\" must be a number");
    MultiIndex alpha;
    for (const auto& a : t["alpha"]) {
      expect(a.is_number_integer(), where + ": exponents must be integers");
      alpha.push_back(a.get<int>());
    }
    try {
      f.add_term(alpha, t["coeff"].get<double>());
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  return f;
}

json terms_to_json(const WeylPolynomial& f) {
  json terms = json::array();
  for (const auto& [alpha, c] : f.coefficients()) {
    terms.push_back({{"alpha", alpha}, {"coeff", c}});
  }
  return terms;
}

}  // namespace

PolySystem poly_system_from_json(const json& doc) {
  expect(doc.is_object(), "system: expected a JSON object");
  expect(doc.contains("n") && doc["n"].is_number_integer(), "system: missing integer \"n\"");
  expect(doc.contains("degrees") && doc["degrees"].is_array(), "system: missing \"degrees\"");
  expect(doc.contains("polys") && doc["polys"].is_array(), "system: missing \"polys\"");
  const int n = doc["n"].get<int>();
  expect(n >= 1, "system: n must be positive");
  const auto& degrees = doc["degrees"];
  const auto& polys = doc["polys"];
  expect(static_cast<int>(degrees.size()) == n, "system: need exactly n degrees");
  expect(static_cast<int>(polys.size()) == n, "system: need exactly n polynomials");
  std::vector<WeylPolynomial> out;
  for (int i = 0; i < n; ++i) {
    expect(degrees[i].is_number_integer() && degrees[i].get<int>() >= 1,
           "system: degrees must be positive integers");
    out.push_back(poly_from_terms(polys[i], n, degrees[i].get<int>(),
                                  "system polynomial " + std::to_string(i)));
  }
  return PolySystem(std::move(out));
}

json poly_system_to_json(const PolySystem& f) {
  json polys = json::array();
  for (const auto& p : f.polys()) polys.push_back(terms_to_json(p));
  return {{"n", f.n()}, {"degrees", f.degrees()}, {"polys", polys}};
}

WeylPolynomial curve_from_json(const json& doc) {
  expect(doc.is_object(), "curve: expected a JSON object");
  expect(doc.value("p", 0) == 2, "curve: \"p\" must be 2");
  expect(doc.contains("degree") && doc["degree"].is_number_integer() && doc["degree"].get<int>() >= 1,
         "curve: missing positive integer \"degree\"");
  expect(doc.contains("monomials"), "curve: missing \"monomials\"");
  return poly_from_terms(doc["monomials"], 2, doc["degree"].get<int>(), "curve");
}

json curve_to_json(const WeylPolynomial& f) {
  return {{"p", 2}, {"degree", f.degree()}, {"monomials", terms_to_json(f)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

SpherePoint center_from_json(const json& doc, std::string* warning) {
  expect(doc.is_array() && doc.size() >= 2, "center: expected an array of at least two numbers");
  std::vector<double> c;
  double norm2 = 0.0;
  for (const auto& x : doc) {
    expect(x.is_number(), "center: entries must be numbers");
    c.push_back(x.get<double>());
    norm2 += c.back() * c.back();
  }
  const double norm = std::sqrt(norm2);
  expect(norm > 0.0 && std::isfinite(norm), "center: vector must be nonzero and finite");
  if (warning != nullptr && std::abs(norm - 1.0) > 1e-6) {
    *warning = "center norm is " + format_double(norm) + "; normalizing";
  }
  return SpherePoint::normalized(std::move(c));
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace smoothcond::io
