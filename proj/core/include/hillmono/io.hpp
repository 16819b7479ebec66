#pragma once

// Text formats. All readers validate their invariants and throw InputError.
//
//   CoverElement  {"m": [a, b, c, d], "omega": w, "component": "+" | "-"}
//   Potential     {"kind": "constant", "c": x}
//                 {"kind": "trig_poly", "constant_term": x, "cos_coeffs": [...], "sin_coeffs": [...]}
//                 {"kind": "sampled", "samples": [...], "interp": "linear" | "cubic"}
//   Orbit         {"theta_max": x, "rho": [...], "rho_prime": [...], "rho_second": [...]}
//   Curve (CSV)   t,v1,v2,v1p,v2p

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "hillmono/cover_group.hpp"
#include "hillmono/kepler.hpp"
#include "hillmono/potential.hpp"

namespace hillmono::io {

using Json = nlohmann::json;

// Shortest decimal that reads back to the same double ("%.17g" fallback).
std::string format_double(double x);

Json to_json(const CoverElementPM& g);
CoverElementPM cover_element_from_json(const Json& j);

// Function-kind potentials are written as cubic samples on sample_count() nodes.
Json to_json(const Potential& q);
Potential potential_from_json(const Json& j);

Json to_json(const Orbit& orbit);
Orbit orbit_from_json(const Json& j);

void write_curve_csv(std::ostream& os, const FundamentalCurve& curve);
FundamentalCurve read_curve_csv(std::istream& is);

Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace hillmono::io
