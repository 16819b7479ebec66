#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hillmono/boundary.hpp"
#include "hillmono/cover_group.hpp"
#include "hillmono/errors.hpp"
#include "hillmono/hill_integrator.hpp"
#include "hillmono/io.hpp"
#include "hillmono/kepler.hpp"
#include "hillmono/numerics.hpp"
#include "hillmono/spectral.hpp"
#include "hillmono/synthesis.hpp"

namespace hillmono::cli {

namespace {

using io::Json;
using io::format_double;

constexpr double synthesis_tolerance = 1e-6;

struct RunConfig {
  std::string output;  // empty: stdout
  int steps = default_steps;
  double trace_tol = default_trace_tolerance;
  double residual_tol = default_residual_tolerance;
  std::string format;
};

// A path, or an inline JSON document when the argument starts with '{'.
Json load_json(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      return Json::parse(arg);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("malformed inline JSON: ") + e.what());
    }
  }
  return io::read_json_file(arg);
}

Potential load_potential(const std::string& arg) { return io::potential_from_json(load_json(arg)); }

void check_config(const RunConfig& cfg) {
  if (cfg.steps < min_steps) throw InputError("--steps must be at least 16");
  if (!(cfg.trace_tol > 0.0) || !(cfg.residual_tol > 0.0)) {
    throw InputError("tolerances must be positive");
  }
}

Json stratum_json(const Stratum& st) {
  return Json{{"kind", std::string(to_string(st.kind))},
              {"n", st.component_index},
              {"trace", st.trace}};
}

Json iwasawa_json(const IwasawaCoords& c) {
  return Json{{"theta", c.theta}, {"rho", c.rho}, {"nu", c.nu}};
}

void require_valid(const CoverElementPM& g, const char* what) {
  if (!g.is_valid()) throw NumericalError(std::string(what) + " violates the cover invariants");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------

std::string cmd_monodromy(const RunConfig& cfg, const std::string& potential) {
  const Monodromy m = monodromy(load_potential(potential), cfg.steps);
  require_valid(m.element, "monodromy");
  const Mat2& a = m.element.mat();
  return dump(Json{{"matrix", {a.a, a.b, a.c, a.d}},
                   {"omega", m.element.omega()},
                   {"theta_R", m.theta_R},
                   {"trace", a.trace()},
                   {"element", io::to_json(m.element)},
                   {"stratum", stratum_json(classify(m.element, cfg.trace_tol))}});
}

struct KeplerArgs {
  std::string potential, orbit, curve;
};

int count_sources(const KeplerArgs& k) {
  return static_cast<int>(!k.potential.empty()) + static_cast<int>(!k.orbit.empty()) +
         static_cast<int>(!k.curve.empty());
}

// A potential is valid input, so a curve failing its invariants means the grid
// was too coarse.
FundamentalCurve integrated_curve(const std::string& potential, int steps) {
  FundamentalCurve curve = curve_of(load_potential(potential), steps);
  if (const auto why = curve_defect(curve); !why.empty()) {
    throw NumericalError("integrated curve: " + why + "; increase --steps");
  }
  return curve;
}

FundamentalCurve load_curve(const std::string& path) {
  std::istringstream in(io::read_text_file(path));
  return io::read_curve_csv(in);
}

std::string cmd_kepler(const RunConfig& cfg, const std::string& direction, const KeplerArgs& k) {
  if (count_sources(k) != 1) {
    throw InputError("kepler: give exactly one of --potential, --orbit, --curve");
  }
  if (direction == "to-orbit") {
    if (!k.orbit.empty()) throw InputError("kepler to-orbit: input is already an orbit");
    const FundamentalCurve c =
        k.curve.empty() ? integrated_curve(k.potential, cfg.steps) : load_curve(k.curve);
    return dump(io::to_json(orbit_of(c)));
  }
  if (direction == "to-potential") {
    if (!k.potential.empty()) throw InputError("kepler to-potential: input is already a potential");
    if (!k.curve.empty()) return dump(io::to_json(potential_of_curve(load_curve(k.curve))));
    const Orbit orbit = io::orbit_from_json(load_json(k.orbit));
    return dump(io::to_json(potential_of_orbit(orbit, cfg.steps)));
  }
  if (direction == "to-curve") {
    if (!k.curve.empty()) throw InputError("kepler to-curve: input is already a curve");
    const FundamentalCurve c =
        k.orbit.empty() ? integrated_curve(k.potential, cfg.steps)
                        : curve_of_orbit(io::orbit_from_json(load_json(k.orbit)), cfg.steps);
    if (const auto why = curve_defect(c); !why.empty()) {
      throw NumericalError("kepler: produced an invalid curve: " + why);
    }
    std::ostringstream os;
    io::write_curve_csv(os, c);
    return os.str();
  }
  throw InputError("kepler: unknown direction " + direction);
}

struct SynthArgs {
  std::optional<double> theta, rho, nu;
  std::string target;
  std::vector<double> coeffs;
};

std::string cmd_synthesize(const RunConfig& cfg, const SynthArgs& s) {
  CoverElement g;
  const bool coords = s.theta || s.rho || s.nu;
  if (coords == !s.target.empty()) {
    throw InputError("synthesize: give either --theta/--rho/--nu or --target");
  }
  if (coords) {
    if (!(s.theta && s.rho && s.nu)) {
      throw InputError("synthesize: --theta, --rho, --nu are all required");
    }
    if (!(*s.rho > 0.0)) throw DomainError("synthesize: --rho must be positive");
    if (!(*s.theta > 0.0)) {
      throw DomainError("synthesize: target is not in G0 (theta must be positive)");
    }
    g = from_right_iwasawa({*s.theta, *s.rho, *s.nu});
  } else {
    const auto plus = io::cover_element_from_json(load_json(s.target)).plus();
    if (!plus) throw DomainError("synthesize: target must be in the plus component");
    g = *plus;
  }
  const Potential built = psi(g, PerturbationCoeffs{s.coeffs}, cfg.steps);
  // Verify what is written: the sampled serialization, read back.
  const Json out_json = io::to_json(built);
  const Potential written = io::potential_from_json(out_json);
  const Monodromy m = monodromy(written, resolved_steps(written, cfg.steps));
  const double d_mat = max_abs_diff(m.element.mat(), g.mat());
  const double d_omega = std::abs(m.element.omega() - g.omega());
  const double d_theta = std::abs(m.theta_R - to_right_iwasawa(g).theta);
  if (std::max({d_mat, d_omega, d_theta}) > synthesis_tolerance) {
    throw NumericalError("synthesize: monodromy misses the target (matrix " + format_double(d_mat) +
                         ", omega " + format_double(d_omega) + ", theta_R " +
                         format_double(d_theta) + "); try more --steps");
  }
  Json j = out_json;
  j["verification"] = Json{{"matrix_residual", d_mat},
                           {"omega_residual", d_omega},
                           {"theta_R_residual", d_theta}};
  return dump(j);
}

std::string cmd_spectrum(const RunConfig& cfg, const std::string& q0, const std::string& qplus,
                         int n_max) {
  if (n_max < 0) throw InputError("spectrum: --n-max must be nonnegative");
  SpectrumOptions opt;
  opt.steps = cfg.steps;
  const auto recs = oscillation_eigenvalues(load_potential(q0), load_potential(qplus), n_max, opt);
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& r : recs) {
      arr.push_back(Json{{"n", r.index},
                         {"s", r.s},
                         {"multiplicity", r.multiplicity},
                         {"component", r.component.to_string()},
                         {"trace", r.trace},
                         {"theta_R", r.theta_R}});
    }
    return dump(arr);
  }
  std::ostringstream os;
  os << "n,s,multiplicity,component,trace,theta_R\n";
  for (const auto& r : recs) {
    os << r.index << ',' << format_double(r.s) << ',' << r.multiplicity << ','
       << csv_field(r.component.to_string()) << ',' << format_double(r.trace) << ','
       << format_double(r.theta_R) << '\n';
  }
  return os.str();
}

std::string cmd_boundary_separated(const RunConfig& cfg, double theta0, double theta2pi,
                                   const std::string& potential) {
  const SeparatedBC bc(theta0, theta2pi);
  const Potential q = load_potential(potential);
  const SeparatedCheck chk = separated_check(q, bc, cfg.residual_tol, cfg.steps);
  Json j{{"has_solution", chk.has_solution}, {"residual", chk.residual}};
  if (chk.has_solution) {
    const SeparatedIndex idx = separated_index(q, bc, cfg.steps);
    j["index"] = idx.n;
    j["rank"] = idx.rank;
  }
  return dump(j);
}

std::string cmd_boundary_general(const RunConfig& cfg, const std::vector<double>& a,
                                 const std::string& potential) {
  if (a.size() != 4) throw InputError("boundary general: --A needs 4 entries");
  const GeneralBC bc(Mat2{a[0], a[1], a[2], a[3]});
  const Potential q = load_potential(potential);
  const GeneralCheck chk = general_check(q, bc, cfg.residual_tol, cfg.steps);
  const Monodromy m = monodromy(q, cfg.steps);
  const BetaImage beta = beta_image(bc, m.element);
  require_valid(beta.element, "beta image");
  Json b{{"element", io::to_json(beta.element)}, {"trace", beta.trace}};
  if (beta.stratum) b["stratum"] = stratum_json(*beta.stratum);
  return dump(Json{{"has_solution", chk.has_solution},
                   {"all_solutions", general_all_solutions(q, bc, cfg.residual_tol, cfg.steps)},
                   {"trace", chk.trace},
                   {"expected", chk.expected},
                   {"residual", chk.residual},
                   {"beta", b}});
}

std::string cmd_classify(const RunConfig& cfg, const std::string& element,
                         std::optional<double> g_theta) {
  const CoverElementPM g = io::cover_element_from_json(load_json(element));
  Json j{{"component", g.component() == Component::plus ? "+" : "-"}, {"trace", g.trace()}};
  if (const auto p = g.plus()) {
    const CartanCoords c = to_cartan(*p);
    j["stratum"] = stratum_json(classify(*p, cfg.trace_tol));
    j["left_iwasawa"] = iwasawa_json(to_left_iwasawa(*p));
    j["right_iwasawa"] = iwasawa_json(to_right_iwasawa(*p));
    j["cartan"] = Json{{"alpha", c.alpha}, {"x2", c.x2}, {"x3", c.x3}};
  }
  if (g_theta) j["in_G_theta"] = in_G_theta(g, *g_theta);
  return dump(j);
}

struct LevelArgs {
  std::vector<double> levels{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  double alpha_min = -two_pi;
  double alpha_max = two_pi;
  double x_max = 3.0;
  int points = 2001;
};

// Level curves 2 cos(alpha) cosh(x) = c of the trace in the Cartan (alpha, x2)
// plane, x3 = 0. Rows: c, branch, alpha, x; branches are separate polylines.
std::string cmd_plot_levels(const LevelArgs& a) {
  if (a.points < 2 || !(a.alpha_max > a.alpha_min) || !(a.x_max > 0.0)) {
    throw InputError("plotdata levels: need points >= 2, alpha_max > alpha_min, x_max > 0");
  }
  std::ostringstream os;
  os << "c,branch,alpha,x\n";
  for (double c : a.levels) {
    int branch = 0;
    const auto emit = [&](double alpha, double x) {
      os << format_double(c) << ',' << branch << ',' << format_double(alpha) << ','
         << format_double(x) << '\n';
    };
    if (c == 0.0) {
      const double k0 = std::ceil((a.alpha_min - half_pi) / pi);
      for (double k = k0; half_pi + k * pi <= a.alpha_max; k += 1.0, ++branch) {
        for (int i = 0; i < a.points; ++i) {
          emit(half_pi + k * pi, -a.x_max + 2.0 * a.x_max * i / (a.points - 1));
        }
      }
      continue;
    }
    // x = +-arccosh(c / (2 cos alpha)) where the ratio is >= 1; each sign and each
    // maximal alpha run is its own branch.
    for (double sign : {1.0, -1.0}) {
      bool open = false;
      for (int i = 0; i < a.points; ++i) {
        const double alpha = a.alpha_min + (a.alpha_max - a.alpha_min) * i / (a.points - 1);
        const double ratio = c / (2.0 * std::cos(alpha));
        const double x = ratio >= 1.0 ? std::acosh(ratio) : -1.0;
        if (x >= 0.0 && x <= a.x_max) {
          emit(alpha, sign * x);
          open = true;
        } else if (open) {
          ++branch;
          open = false;
        }
      }
      if (open) ++branch;
    }
  }
  return os.str();
}

std::string cmd_plot_orbit(const RunConfig& cfg, const std::string& potential) {
  const Orbit o = orbit_of(integrated_curve(potential, cfg.steps));
  std::ostringstream os;
  os << "theta,rho\n";
  for (std::size_t i = 0; i < o.rho.size(); ++i) {
    os << format_double(o.theta_at(i)) << ',' << format_double(o.rho[i]) << '\n';
  }
  return os.str();
}

std::string cmd_plot_curve(const RunConfig& cfg, const std::string& potential) {
  std::ostringstream os;
  io::write_curve_csv(os, integrated_curve(potential, cfg.steps));
  return os.str();
}

std::string cmd_sample_potential(const RunConfig& cfg, const std::string& potential, int nodes) {
  const Potential q = load_potential(potential);
  const int n = nodes > 0 ? nodes : q.sample_count();
  if (n < min_sample_count) throw InputError("sample-potential: --nodes must be at least 17");
  const auto s = q.sample(n);
  if (cfg.format == "json") {
    return dump(io::to_json(Potential::sampled(s, Interpolation::cubic)));
  }
  std::ostringstream os;
  os << "t,q\n";
  for (int i = 0; i < n; ++i) {
    const double t = i + 1 == n ? two_pi : two_pi * i / (n - 1);
    os << format_double(t) << ',' << format_double(s[static_cast<std::size_t>(i)]) << '\n';
  }
  return os.str();
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.output);
  f << text;
  if (!f) throw InputError("error writing " + cfg.output);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lifted monodromy of Hill's equation -v'' + q v = 0 on [0, 2 pi]", "hillmono"};
  app.require_subcommand(1);

  RunConfig cfg;
  const auto common = [&cfg](CLI::App* sub, bool tolerances) {
    sub->add_option("-o,--output", cfg.output, "Output file (default: stdout)");
    sub->add_option("--steps", cfg.steps, "RK4 steps over [0, 2 pi]")->capture_default_str();
    if (tolerances) {
      sub->add_option("--trace-tol", cfg.trace_tol, "Trace / classification tolerance")
          ->capture_default_str();
      sub->add_option("--residual-tol", cfg.residual_tol, "Boundary residual tolerance")
          ->capture_default_str();
    }
  };
  std::string potential;

  auto* mono = app.add_subcommand("monodromy", "Lifted monodromy of a potential");
  mono->add_option("--potential", potential, "Potential JSON file or inline JSON")->required();
  common(mono, true);

  auto* kepler = app.add_subcommand("kepler", "Kepler transform between potentials, curves, orbits");
  std::string direction;
  KeplerArgs kargs;
  for (const char* dir : {"to-orbit", "to-potential", "to-curve"}) {
    auto* sub = kepler->add_subcommand(dir, std::string("Convert to ") + (dir + 3));
    sub->add_option("--potential", kargs.potential, "Potential JSON");
    sub->add_option("--orbit", kargs.orbit, "Orbit JSON");
    sub->add_option("--curve", kargs.curve, "Curve CSV");
    common(sub, false);
    sub->callback([&direction, dir] { direction = dir; });
  }
  kepler->require_subcommand(1);

  auto* synth = app.add_subcommand("synthesize", "Potential with a prescribed monodromy in G0");
  SynthArgs sargs;
  synth->add_option("--theta", sargs.theta, "Right Iwasawa angle theta_R > 0");
  synth->add_option("--rho", sargs.rho, "Right Iwasawa rho > 0");
  synth->add_option("--nu", sargs.nu, "Right Iwasawa nu");
  synth->add_option("--target", sargs.target, "Cover element JSON");
  synth->add_option("--coeffs", sargs.coeffs, "Perturbation coefficients a1,a2,...")
      ->delimiter(',');
  common(synth, false);

  auto* spec = app.add_subcommand("spectrum", "Periodic eigenvalues along q0 - s q+");
  std::string q0, qplus;
  int n_max = 4;
  spec->add_option("--q0", q0, "Base potential")->required();
  spec->add_option("--qplus", qplus, "Positive direction potential")->required();
  spec->add_option("--n-max", n_max, "Largest eigenvalue index")->capture_default_str();
  spec->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  common(spec, false);

  auto* bnd = app.add_subcommand("boundary", "Two-point boundary conditions");
  bnd->require_subcommand(1);
  double theta0 = 0.0, theta2pi = 0.0;
  auto* sep = bnd->add_subcommand("separated", "Separated conditions");
  sep->add_option("--theta0", theta0, "Angle of the condition at 0, in [0, pi)")->required();
  sep->add_option("--theta2pi", theta2pi, "Angle of the condition at 2 pi, in (0, pi]")->required();
  sep->add_option("--potential", potential, "Potential JSON file or inline JSON")->required();
  common(sep, true);
  std::vector<double> amat;
  auto* gen = bnd->add_subcommand("general", "Coupled conditions (v, v')(2 pi) = A (v, v')(0)");
  gen->add_option("--A", amat, "Matrix entries a,b,c,d (row-major)")->required()->delimiter(',');
  gen->add_option("--potential", potential, "Potential JSON file or inline JSON")->required();
  common(gen, true);

  auto* cls = app.add_subcommand("classify", "Conjugacy stratum of a cover element");
  std::string element;
  std::optional<double> g_theta;
  cls->add_option("--element", element, "Cover element JSON file or inline JSON")->required();
  cls->add_option("--g-theta", g_theta, "Also report membership in G_theta");
  common(cls, true);

  auto* plot = app.add_subcommand("plotdata", "CSV data for external plotting");
  plot->require_subcommand(1);
  LevelArgs largs;
  auto* levels = plot->add_subcommand("levels", "Trace level curves in Cartan coordinates");
  levels->add_option("--c", largs.levels, "Trace levels")->delimiter(',');
  levels->add_option("--alpha-min", largs.alpha_min, "Left end of the alpha range")
      ->capture_default_str();
  levels->add_option("--alpha-max", largs.alpha_max, "Right end of the alpha range")
      ->capture_default_str();
  levels->add_option("--x-max", largs.x_max, "Largest |x| emitted")->capture_default_str();
  levels->add_option("--points", largs.points, "Samples per branch")->capture_default_str();
  levels->add_option("-o,--output", cfg.output, "Output file (default: stdout)");
  auto* porbit = plot->add_subcommand("orbit", "Orbit (theta, rho) of a potential");
  porbit->add_option("--potential", potential, "Potential JSON file or inline JSON")->required();
  common(porbit, false);
  auto* pcurve = plot->add_subcommand("curve", "Fundamental curve of a potential");
  pcurve->add_option("--potential", potential, "Potential JSON file or inline JSON")->required();
  common(pcurve, false);

  auto* sample = app.add_subcommand("sample-potential", "Potential values on a uniform grid");
  int nodes = 0;
  sample->add_option("--potential", potential, "Potential JSON file or inline JSON")->required();
  sample->add_option("--nodes", nodes, "Grid size (default: the potential's sample count)");
  sample->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("-o,--output", cfg.output, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  try {
    check_config(cfg);
    std::string text;
    if (mono->parsed()) {
      text = cmd_monodromy(cfg, potential);
    } else if (kepler->parsed()) {
      text = cmd_kepler(cfg, direction, kargs);
    } else if (synth->parsed()) {
      text = cmd_synthesize(cfg, sargs);
    } else if (spec->parsed()) {
      text = cmd_spectrum(cfg, q0, qplus, n_max);
    } else if (sep->parsed()) {
      text = cmd_boundary_separated(cfg, theta0, theta2pi, potential);
    } else if (gen->parsed()) {
      text = cmd_boundary_general(cfg, amat, potential);
    } else if (cls->parsed()) {
      text = cmd_classify(cfg, element, g_theta);
    } else if (levels->parsed()) {
      text = cmd_plot_levels(largs);
    } else if (porbit->parsed()) {
      text = cmd_plot_orbit(cfg, potential);
    } else if (pcurve->parsed()) {
      text = cmd_plot_curve(cfg, potential);
    } else if (sample->parsed()) {
      text = cmd_sample_potential(cfg, potential, nodes);
    }
    write_output(cfg, text, out);
    return exit_ok;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return exit_numerical;
  }
}

}  // namespace hillmono::cli
