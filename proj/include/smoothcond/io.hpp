#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "smoothcond/polynomial.hpp"
#include "smoothcond/tubes.hpp"

namespace smoothcond::io {

// JSON documents:
//   system: {"n": 2, "degrees": [2, 1],
//            "polys": [[{"alpha": [2, 0, 0], "coeff": 1.0}, ...], ...]}
//   curve:  {"p": 2, "degree": 2,
//            "monomials": [{"alpha": [1, 1, 0], "coeff": 0.5}, ...]}
//   center: [1.0, 0.0, 0.0]
// Malformed documents raise std::invalid_argument.

PolySystem poly_system_from_json(const nlohmann::json& doc);
nlohmann::json poly_system_to_json(const PolySystem& f);

WeylPolynomial curve_from_json(const nlohmann::json& doc);
nlohmann::json curve_to_json(const WeylPolynomial& f);

/// Reads a JSON file; std::runtime_error when it cannot be opened or parsed.
nlohmann::json read_json_file(const std::string& path);

/// Parses a center vector; `warning` is set when the norm deviates from 1
/// by more than 1e-6 (the point is normalized either way).
SpherePoint center_from_json(const nlohmann::json& doc, std::string* warning = nullptr);

/// Shortest round-trip representation with 17 significant digits.
std::string format_double(double x);

}  // namespace smoothcond::io
