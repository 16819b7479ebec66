#include "hillmono/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hillmono/cover_group.hpp"
#include "hillmono/errors.hpp"
#include "hillmono/numerics.hpp"

namespace hillmono {

namespace {

constexpr int positivity_samples = 4097;
constexpr double scan_max_advance = 0.25 * pi;

// mu(q0 - s q+) from fixed half-step samples of q0 and q+.
class Family {
 public:
  Family(const Potential& q0, const Potential& qplus, int steps)
      : base_(half_step_samples(q0, steps)),
        dir_(half_step_samples(qplus, steps)),
        buffer_(base_.size()) {}

  Monodromy at(double s) const {
    for (std::size_t i = 0; i < base_.size(); ++i) buffer_[i] = base_[i] - s * dir_[i];
    return monodromy_from_samples(buffer_);
  }

 private:
  std::vector<double> base_;
  std::vector<double> dir_;
  mutable std::vector<double> buffer_;
};

int slab_index(const CoverElement& g) {
  return static_cast<int>(std::lround(to_cartan(g).alpha / pi));
}

struct ScanPoint {
  double s;
  Monodromy mu;
  int index;
};

ScanPoint probe(const Family& family, double s) {
  Monodromy m = family.at(s);
  const int idx = slab_index(m.element);
  return {s, m, idx};
}

// Last eigenvalue index whose window has been fully scanned once the scan reached slab m.
int largest_complete_index(int m) { return m >= 1 ? 2 * ((m - 1) / 2) : -1; }

int leaf_sign(const CoverElement& g) {
  const Stratum st = classify(g, 1e-6);
  if (st.kind == StratumKind::parabolic_leaf_plus) return 1;
  if (st.kind == StratumKind::parabolic_leaf_minus) return -1;
  throw NumericalError("spectrum: trace-2 root is not on a cone leaf (stratum " +
                       std::string(to_string(st.kind)) + ")");
}

}  // namespace

std::string C1Component::to_string() const {
  switch (variant) {
    case Variant::hyperplane: return "hyperplane";
    case Variant::vertex: return "vertex(" + std::to_string(n) + ")";
    case Variant::cone_leaf:
      return "cone_leaf(" + std::to_string(n) + "," + (sign > 0 ? "+" : "-") + ")";
  }
  return "unknown";
}

bool in_C1(const Potential& q, double tol, int steps) {
  if (!(tol > 0.0)) throw DomainError("in_C1: tolerance must be positive");
  return std::abs(monodromy(q, steps).element.trace() - 2.0) <= tol;
}

namespace {

bool is_even_center(const CoverElement& g, double tol, int* k_out) {
  const double k = std::round(-g.omega() / two_pi);
  if (k < 1.0) return false;
  if (max_abs_diff(g.mat(), Mat2::identity()) > tol) return false;
  if (std::abs(g.omega() + k * two_pi) > tol) return false;
  if (k_out) *k_out = static_cast<int>(k);
  return true;
}

}  // namespace

bool in_C2(const Potential& q, double tol, int steps) {
  if (!(tol > 0.0)) throw DomainError("in_C2: tolerance must be positive");
  return is_even_center(monodromy(q, steps).element, tol, nullptr);
}

C1Component c1_component(const Potential& q, double tol, int steps) {
  if (!(tol > 0.0)) throw DomainError("c1_component: tolerance must be positive");
  const CoverElement g = monodromy(q, steps).element;
  if (std::abs(g.trace() - 2.0) > tol) {
    throw DomainError("c1_component: potential is not in C1 (trace " + std::to_string(g.trace()) +
                      ")");
  }
  using V = C1Component::Variant;
  if (int k = 0; is_even_center(g, tol, &k)) return {V::vertex, k, 0};
  const Stratum st = classify(g, tol);
  const int n = st.component_index;
  if (n == 0) return {V::hyperplane, 0, 0};
  if (n < 0 || n % 2 != 0) {
    throw NumericalError("c1_component: trace-2 element outside the even slabs");
  }
  switch (st.kind) {
    case StratumKind::parabolic_leaf_plus: return {V::cone_leaf, n / 2, 1};
    case StratumKind::parabolic_leaf_minus: return {V::cone_leaf, n / 2, -1};
    case StratumKind::parabolic_vertex: return {V::vertex, n / 2, 0};
    default: break;
  }
  throw NumericalError("c1_component: inconsistent stratum for a trace-2 element");
}

std::vector<EigenvalueRecord> oscillation_eigenvalues(const Potential& q0, const Potential& qplus,
                                                      int n_max, const SpectrumOptions& opt) {
  if (n_max < 0) throw DomainError("oscillation_eigenvalues: n_max must be nonnegative");
  const auto plus_samples = qplus.sample(positivity_samples);
  const double plus_min = *std::min_element(plus_samples.begin(), plus_samples.end());
  const double plus_max = *std::max_element(plus_samples.begin(), plus_samples.end());
  if (!(plus_min > 0.0)) {
    throw DomainError("oscillation_eigenvalues: q+ must be positive (min sample " +
                      std::to_string(plus_min) + ")");
  }
  const Family family(q0, qplus, opt.steps);
  const auto trace_at = [&](double s) { return family.at(s).element.trace(); };

  // Start in A_0 on the hyperbolic side: large positive potential.
  double d = 1.0 / plus_max;
  ScanPoint cur = probe(family, 0.0);
  for (int k = 0; !(cur.index == 0 && cur.mu.element.trace() > 2.0); ++k) {
    if (k > 200) throw NumericalError("oscillation_eigenvalues: no hyperbolic start in A_0");
    cur = probe(family, cur.s - d);
    d *= 2.0;
  }
  const double s_start = cur.s;

  // Scan upward until the slab past the last needed window is reached.
  const int windows = (n_max + 1) / 2;  // cones 1..windows
  const int final_slab = 2 * windows + 1;
  std::vector<double> boundary;  // boundary[m]: s where mu leaves A_m for A_{m+1}
  d = 0.25 / plus_max;
  for (int iter = 0; cur.index < final_slab; ++iter) {
    if (iter >= opt.max_scan_steps) {
      throw RangeError("oscillation_eigenvalues: scan exhausted before index " +
                           std::to_string(n_max),
                       largest_complete_index(cur.index));
    }
    const ScanPoint next = probe(family, cur.s + d);
    const double advance = next.mu.theta_R - cur.mu.theta_R;
    if (advance < -1e-9) {
      throw NumericalError("oscillation_eigenvalues: theta_R decreased along the scan");
    }
    if (next.index < cur.index) {
      throw NumericalError("oscillation_eigenvalues: slab index decreased along the scan");
    }
    if (advance > scan_max_advance || next.index > cur.index + 1) {
      d *= 0.5;
      if (d < 1e-14 * std::max(1.0, std::abs(cur.s))) {
        throw NumericalError("oscillation_eigenvalues: scan step underflow");
      }
      continue;
    }
    if (next.index == cur.index + 1) {
      const double ta = cur.mu.element.trace(), tb = next.mu.element.trace();
      const double b = (ta > 0.0) != (tb > 0.0)
                           ? find_root_brent(trace_at, cur.s, next.s, ta, tb, opt.root_xtol)
                           : 0.5 * (cur.s + next.s);
      boundary.push_back(b);
    }
    cur = next;
    if (advance < 0.25 * scan_max_advance) d *= 2.0;
  }

  std::vector<EigenvalueRecord> out;
  const auto record = [&](int index, double s, int mult, C1Component comp) {
    const Monodromy m = family.at(s);
    out.push_back({index, s, mult, comp, m.element.trace(), m.theta_R});
  };
  using V = C1Component::Variant;

  {
    const auto f = [&](double s) { return trace_at(s) - 2.0; };
    const double lo = s_start, hi = boundary.at(0);
    const double s0 = find_root_brent(f, lo, hi, f(lo), f(hi), opt.root_xtol);
    record(0, s0, 1, {V::hyperplane, 0, 0});
  }

  for (int k = 1; k <= windows; ++k) {
    const double lo = boundary.at(static_cast<std::size_t>(2 * k - 1));
    const double hi = boundary.at(static_cast<std::size_t>(2 * k));
    const auto [s_peak, neg_peak] =
        minimize_brent([&](double s) { return -trace_at(s); }, lo, hi, 1e-10);
    const double peak = -neg_peak;
    if (peak < 2.0 - opt.vertex_trace_slack) {
      throw NumericalError("oscillation_eigenvalues: no trace-2 point in slab A_" +
                           std::to_string(2 * k));
    }

    // The vertex is the unique point of the window where Phi = I; the distance to
    // I is V-shaped there, which locates it far better than the flat trace peak.
    const auto identity_gap = [&](double s) {
      return max_abs_diff(family.at(s).element.mat(), Mat2::identity());
    };
    if (identity_gap(s_peak) <= 1e-3) {
      const double w = 0.1 * (hi - lo);
      const auto [s_v, gap] = minimize_brent(identity_gap, std::max(lo, s_peak - w),
                                             std::min(hi, s_peak + w), opt.root_xtol);
      if (gap <= opt.vertex_identity_tol) {
        record(2 * k - 1, s_v, 2, {V::vertex, k, 0});
        record(2 * k, s_v, 2, {V::vertex, k, 0});
        continue;
      }
    }

    const auto f = [&](double s) { return trace_at(s) - 2.0; };
    const double f_peak = peak - 2.0;
    double left = s_peak, right = s_peak;
    if (f_peak > 0.0) {
      left = find_root_brent(f, lo, s_peak, f(lo), f_peak, opt.root_xtol);
      right = find_root_brent(f, s_peak, hi, f_peak, f(hi), opt.root_xtol);
    }
    record(2 * k - 1, left, 1,
           {V::cone_leaf, k, leaf_sign(family.at(left).element)});
    record(2 * k, right, 1,
           {V::cone_leaf, k, leaf_sign(family.at(right).element)});
  }

  out.resize(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].s < out[i - 1].s) {
      throw NumericalError("oscillation_eigenvalues: eigenvalues out of order");
    }
  }
  return out;
}

bool is_critical_point_quadratic(const Potential& u, double tol, int steps) {
  return in_C1(u, tol, steps);
}

}  // namespace hillmono
