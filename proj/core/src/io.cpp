#include "hillmono/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hillmono/errors.hpp"

namespace hillmono::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

std::vector<double> number_array(const Json& j, const char* key) {
  const Json& arr = j.at(key);
  if (!arr.is_array()) throw InputError(std::string(key) + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const Json& x : arr) {
    if (!x.is_number()) throw InputError(std::string(key) + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const Json& j, const char* key) {
  const Json& x = j.at(key);
  if (!x.is_number()) throw InputError(std::string(key) + " must be a number");
  const double v = x.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(key) + " must be finite");
  return v;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

Json to_json(const CoverElementPM& g) {
  const Mat2& m = g.mat();
  return Json{{"m", {m.a, m.b, m.c, m.d}},
              {"omega", g.omega()},
              {"component", g.component() == Component::plus ? "+" : "-"}};
}

CoverElementPM cover_element_from_json(const Json& j) {
  return guarded("cover element", [&] {
    if (!j.is_object()) throw InputError("cover element must be a JSON object");
    const auto m = number_array(j, "m");
    if (m.size() != 4) throw InputError("cover element: m must have 4 entries");
    const double omega = number(j, "omega");
    Component comp = Component::plus;
    if (j.contains("component")) {
      const auto c = j.at("component").get<std::string>();
      if (c == "-") comp = Component::minus;
      else if (c != "+") throw InputError("cover element: component must be \"+\" or \"-\"");
    }
    const CoverElementPM g(comp, Mat2{m[0], m[1], m[2], m[3]}, omega);
    if (!g.is_valid()) {
      throw InputError("cover element violates det = +-1 or arg(m e2) = pi/2 + omega (mod 2 pi)");
    }
    return g;
  });
}

Json to_json(const Potential& q) {
  switch (q.kind()) {
    case PotentialKind::constant: return Json{{"kind", "constant"}, {"c", q.constant_value()}};
    case PotentialKind::trig_poly:
      return Json{{"kind", "trig_poly"},
                  {"constant_term", q.trig().constant_term},
                  {"cos_coeffs", q.trig().cos_coeffs},
                  {"sin_coeffs", q.trig().sin_coeffs}};
    case PotentialKind::sampled: {
      const auto s = q.samples();
      return Json{{"kind", "sampled"},
                  {"samples", std::vector<double>(s.begin(), s.end())},
                  {"interp", q.interpolation() == Interpolation::cubic ? "cubic" : "linear"}};
    }
    case PotentialKind::function:
      return Json{{"kind", "sampled"}, {"samples", q.sample(q.sample_count())}, {"interp", "cubic"}};
  }
  throw InputError("unknown potential kind");
}

Potential potential_from_json(const Json& j) {
  return guarded("potential", [&] {
    if (!j.is_object()) throw InputError("potential must be a JSON object");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "constant") return Potential::constant(number(j, "c"));
    if (kind == "trig_poly") {
      TrigPoly p;
      p.constant_term = j.contains("constant_term") ? number(j, "constant_term") : 0.0;
      if (j.contains("cos_coeffs")) p.cos_coeffs = number_array(j, "cos_coeffs");
      if (j.contains("sin_coeffs")) p.sin_coeffs = number_array(j, "sin_coeffs");
      return Potential::trig_poly(std::move(p));
    }
    if (kind == "sampled") {
      Interpolation interp = Interpolation::cubic;
      if (j.contains("interp")) {
        const auto name = j.at("interp").get<std::string>();
        if (name == "linear") interp = Interpolation::linear;
        else if (name != "cubic") throw InputError("potential: interp must be linear or cubic");
      }
      return Potential::sampled(number_array(j, "samples"), interp);
    }
    throw InputError("potential: unknown kind \"" + kind + "\"");
  });
}

Json to_json(const Orbit& orbit) {
  Json j{{"theta_max", orbit.theta_max}, {"rho", orbit.rho}};
  if (!orbit.rho_prime.empty()) j["rho_prime"] = orbit.rho_prime;
  if (!orbit.rho_second.empty()) j["rho_second"] = orbit.rho_second;
  return j;
}

Orbit orbit_from_json(const Json& j) {
  return guarded("orbit", [&] {
    if (!j.is_object()) throw InputError("orbit must be a JSON object");
    Orbit orbit;
    orbit.theta_max = number(j, "theta_max");
    orbit.rho = number_array(j, "rho");
    if (j.contains("rho_prime")) orbit.rho_prime = number_array(j, "rho_prime");
    if (j.contains("rho_second")) orbit.rho_second = number_array(j, "rho_second");
    if (const auto why = orbit_defect(orbit); !why.empty()) throw InputError("orbit: " + why);
    return orbit;
  });
}

void write_curve_csv(std::ostream& os, const FundamentalCurve& curve) {
  os << "t,v1,v2,v1p,v2p\n";
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    os << format_double(curve.t[i]) << ',' << format_double(curve.v[i].x) << ','
       << format_double(curve.v[i].y) << ',' << format_double(curve.vp[i].x) << ','
       << format_double(curve.vp[i].y) << '\n';
  }
}

FundamentalCurve read_curve_csv(std::istream& is) {
  FundamentalCurve curve;
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("t,", 0) == 0) continue;
    }
    std::array<double, 5> row{};
    std::size_t pos = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::size_t end = k + 1 < row.size() ? line.find(',', pos) : line.size();
      if (end == std::string::npos) {
        throw InputError("curve CSV line " + std::to_string(lineno) + ": expected 5 columns");
      }
      const char* first = line.data() + pos;
      const char* last = line.data() + end;
      while (first < last && *first == ' ') ++first;
      const auto res = std::from_chars(first, last, row[k]);
      if (res.ec != std::errc() || res.ptr != last) {
        throw InputError("curve CSV line " + std::to_string(lineno) + ": bad number");
      }
      pos = end + 1;
    }
    curve.t.push_back(row[0]);
    curve.v.push_back({row[1], row[2]});
    curve.vp.push_back({row[3], row[4]});
  }
  if (const auto why = curve_defect(curve); !why.empty()) throw InputError("curve: " + why);
  return curve;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace hillmono::io
