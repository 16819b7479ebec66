#pragma once

// Periodic spectrum of -v'' + q v = 0 through the lifted monodromy.
//
// q has a periodic solution iff tr mu(q) = 2, and two independent ones iff
// mu(q) = iota^{2k}. Along the line q0 - s q+ (q+ > 0) the right Iwasawa angle
// of mu grows monotonically with s, so mu crosses the components A_0, A_1, ...
// in order. The hyperplane T_2 meets only the even ones: A_0 once (s_0), and
// each A_{2k} either in two leaves of a cone (s_{2k-1} < s_{2k}) or at its
// vertex iota^{2k} (s_{2k-1} = s_{2k}).

#include <cstdint>
#include <string>
#include <vector>

#include "hillmono/hill_integrator.hpp"
#include "hillmono/potential.hpp"

namespace hillmono {

inline constexpr double default_trace_tolerance = 1e-8;

struct C1Component {
  enum class Variant : std::uint8_t { hyperplane, cone_leaf, vertex };
  Variant variant = Variant::hyperplane;
  int n = 0;     // cone index, mu in A_{2n}
  int sign = 0;  // leaf sign (+1 / -1) for cone_leaf

  std::string to_string() const;
  friend bool operator==(const C1Component&, const C1Component&) = default;
};

struct EigenvalueRecord {
  int index = 0;
  double s = 0.0;
  int multiplicity = 1;
  C1Component component;
  double trace = 0.0;
  double theta_R = 0.0;
};

bool in_C1(const Potential& q, double tol = default_trace_tolerance, int steps = default_steps);
bool in_C2(const Potential& q, double tol = default_trace_tolerance, int steps = default_steps);

// Throws DomainError when q is not in C1 at tolerance `tol`.
C1Component c1_component(const Potential& q, double tol = default_trace_tolerance,
                         int steps = default_steps);

struct SpectrumOptions {
  int steps = default_steps;
  // Accept a vertex when the trace maximum reaches 2 - vertex_trace_slack ...
  double vertex_trace_slack = 1e-9;
  // ... and the monodromy there is within this distance of the identity.
  double vertex_identity_tol = 1e-6;
  double root_xtol = 1e-12;
  int max_scan_steps = 20000;
};

// s_0 <= s_1 <= ... <= s_{n_max}: 0 is the n-th periodic eigenvalue of q0 - s q+.
// Throws DomainError when q+ has a nonpositive sample and RangeError when the
// scan ends before index n_max.
std::vector<EigenvalueRecord> oscillation_eigenvalues(const Potential& q0, const Potential& qplus,
                                                      int n_max,
                                                      const SpectrumOptions& options = {});

// u is a critical point of F(u) = -u'' + u^2/2 iff -v'' + u v = 0 has a periodic solution.
bool is_critical_point_quadratic(const Potential& u, double tol = default_trace_tolerance,
                                 int steps = default_steps);

}  // namespace hillmono
