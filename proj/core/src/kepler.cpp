#include "hillmono/kepler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hillmono/errors.hpp"

namespace hillmono {

namespace {

std::vector<double> uniform_grid(double end, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = end * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  x.back() = end;
  return x;
}

// Fourth-order one-sided derivative at the left end of uniform samples.
double left_slope(const std::vector<double>& f, double h) {
  return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
}

template <class... Args>
std::string describe(Args&&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

}  // namespace

std::string curve_defect(const FundamentalCurve& curve) {
  const std::size_t n = curve.t.size();
  if (n < 3 || curve.v.size() != n || curve.vp.size() != n) {
    return "curve needs at least 3 nodes and equal column lengths";
  }
  const double h = two_pi / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(curve.t[i] - h * static_cast<double>(i)) > 1e-9) {
      return describe("curve grid is not uniform over [0, 2 pi] at node ", i);
    }
    if (!std::isfinite(curve.v[i].x) || !std::isfinite(curve.v[i].y) ||
        !std::isfinite(curve.vp[i].x) || !std::isfinite(curve.vp[i].y)) {
      return describe("non-finite curve sample at node ", i);
    }
    if (curve.v[i].norm() == 0.0) return describe("curve passes through 0 at node ", i);
    const double w = wedge(curve.v[i], curve.vp[i]);
    if (std::abs(w - 1.0) > curve_wronskian_tolerance) {
      return describe("v ^ v' = ", w, " at node ", i);
    }
  }
  const Vec2 v0 = curve.v.front(), vp0 = curve.vp.front();
  if (std::abs(v0.x - 1.0) > curve_start_tolerance || std::abs(v0.y) > curve_start_tolerance ||
      std::abs(vp0.x) > curve_start_tolerance || std::abs(vp0.y - 1.0) > curve_start_tolerance) {
    return "curve must start at v = (1, 0), v' = (0, 1)";
  }
  return {};
}

double orbit_area(const Orbit& orbit) {
  const std::size_t n = orbit.rho.size();
  if (n < 4) throw DomainError("orbit_area: need at least 4 samples");
  const double h = orbit.theta_max / static_cast<double>(n - 1);
  if (n % 2 == 1) return simpson_samples(orbit.rho, h);
  const auto& r = orbit.rho;
  const double tail = 3.0 * h / 8.0 * (r[n - 4] + 3.0 * r[n - 3] + 3.0 * r[n - 2] + r[n - 1]);
  if (n == 4) return tail;
  return simpson_samples(std::span<const double>(r.data(), n - 3), h) + tail;
}

std::string orbit_defect(const Orbit& orbit) {
  const std::size_t n = orbit.rho.size();
  if (!(orbit.theta_max > 0.0) || !std::isfinite(orbit.theta_max)) {
    return "theta_max must be positive and finite";
  }
  if (n < 5) return "orbit needs at least 5 samples";
  if (!orbit.rho_prime.empty() && orbit.rho_prime.size() != n) {
    return "rho_prime length differs from rho";
  }
  if (!orbit.rho_second.empty() && orbit.rho_second.size() != n) {
    return "rho_second length differs from rho";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(orbit.rho[i] > 0.0) || !std::isfinite(orbit.rho[i])) {
      return describe("rho must be positive and finite (node ", i, ")");
    }
  }
  for (const auto* extra : {&orbit.rho_prime, &orbit.rho_second}) {
    for (double x : *extra) {
      if (!std::isfinite(x)) return "non-finite derivative sample";
    }
  }
  if (std::abs(orbit.rho.front() - 1.0) > orbit_rho0_tolerance) {
    return describe("rho(0) = ", orbit.rho.front(), ", expected 1");
  }
  const double h = orbit.theta_max / static_cast<double>(n - 1);
  const double slope0 = orbit.rho_prime.empty() ? left_slope(orbit.rho, h) : orbit.rho_prime[0];
  if (std::abs(slope0) > orbit_slope0_tolerance) {
    return describe("rho'(0) = ", slope0, ", expected 0");
  }
  const double area = orbit_area(orbit);
  if (std::abs(area - two_pi) > orbit_area_tolerance) {
    return describe("integral of rho = ", area, ", expected 2 pi");
  }
  return {};
}

OrbitProfile::OrbitProfile(double theta_max, std::function<Jet(double)> log_rho)
    : theta_max_(theta_max), log_rho_(std::move(log_rho)) {
  if (!(theta_max > 0.0) || !std::isfinite(theta_max)) {
    throw DomainError("OrbitProfile: theta_max must be positive and finite");
  }
}

OrbitProfile OrbitProfile::from_orbit(const Orbit& orbit) {
  if (const auto why = orbit_defect(orbit); !why.empty()) throw InputError("orbit: " + why);
  const auto grid = uniform_grid(orbit.theta_max, orbit.rho.size());
  // Downstream code differentiates rho' once more, so rho' must come from a C1
  // interpolant: the derivative of a Hermite cubic is only continuous.
  auto value = std::make_shared<HermiteCubic>(
      orbit.rho_prime.empty() ? HermiteCubic::not_a_knot(grid, orbit.rho)
                              : HermiteCubic(grid, orbit.rho, orbit.rho_prime));
  std::shared_ptr<HermiteCubic> slope;
  if (!orbit.rho_prime.empty()) {
    slope = std::make_shared<HermiteCubic>(HermiteCubic::not_a_knot(grid, orbit.rho_prime));
  }
  std::shared_ptr<HermiteCubic> second;
  if (!orbit.rho_second.empty()) {
    second = std::make_shared<HermiteCubic>(HermiteCubic::not_a_knot(grid, orbit.rho_second));
  }
  return OrbitProfile(orbit.theta_max, [value, slope, second](double theta) {
    const double r = (*value)(theta);
    double d1 = 0.0, d2 = 0.0;
    if (slope) {
      const Jet s = slope->jet(theta);
      d1 = s.value;
      d2 = s.d1;
    } else {
      const Jet j = value->jet(theta);
      d1 = j.d1;
      d2 = j.d2;
    }
    if (second) d2 = (*second)(theta);
    const double e1 = d1 / r;
    return Jet{std::log(r), e1, d2 / r - e1 * e1};
  });
}

SweepParametrization::SweepParametrization(OrbitProfile profile, int intervals)
    : profile_(std::move(profile)), rule_(gauss_legendre(8)) {
  if (intervals < 1) throw DomainError("SweepParametrization: intervals must be positive");
  width_ = profile_.theta_max() / intervals;
  cumulative_.assign(static_cast<std::size_t>(intervals) + 1, 0.0);
  for (std::size_t j = 0; j + 1 < cumulative_.size(); ++j) {
    cumulative_[j + 1] = cumulative_[j] + partial(j, width_ * static_cast<double>(j + 1));
  }
}

double SweepParametrization::partial(std::size_t j, double theta) const {
  const double a = width_ * static_cast<double>(j);
  const double half = 0.5 * (theta - a);
  const double mid = a + half;
  double sum = 0.0;
  for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
    sum += rule_.weights[k] * profile_.rho(mid + half * rule_.nodes[k]);
  }
  return half * sum;
}

double SweepParametrization::theta(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= cumulative_.back()) return profile_.theta_max();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), t);
  const auto j = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double lo = width_ * static_cast<double>(j);
  const double hi = std::min(lo + width_, profile_.theta_max());
  const double target = t - cumulative_[j];
  double a = lo, b = hi;
  double x = lo + width_ * target / (cumulative_[j + 1] - cumulative_[j]);
  // Newton on F(x) = partial(j, x) - target, F' = rho > 0, kept inside [a, b].
  for (int iter = 0; iter < 60; ++iter) {
    const double f = partial(j, x) - target;
    if (f > 0.0) b = x; else a = x;
    double next = x - f / profile_.rho(x);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

FundamentalCurve curve_of(const Potential& q, int steps) {
  const FundamentalPath path = integrate(q, steps);
  FundamentalCurve curve;
  curve.t = path.t;
  curve.v.reserve(path.phi.size());
  curve.vp.reserve(path.phi.size());
  for (const Mat2& m : path.phi) {
    curve.v.push_back(m.row0());
    curve.vp.push_back(m.row1());
  }
  return curve;
}

Orbit orbit_of(const FundamentalCurve& curve) {
  if (const auto why = curve_defect(curve); !why.empty()) throw InputError("curve: " + why);
  const std::size_t n = curve.t.size();
  const double h = two_pi / static_cast<double>(n - 1);

  // theta' = f = 1/|v|^2 and f' = -2 (v . v') / |v|^4: trapezoid with end correction.
  std::vector<double> theta(n, 0.0), rho(n), slope(n);
  std::vector<double> f(n), fp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = dot(curve.v[i], curve.v[i]);
    const double vv = dot(curve.v[i], curve.vp[i]);
    rho[i] = r;
    f[i] = 1.0 / r;
    fp[i] = -2.0 * vv / (r * r);
    // d rho / d theta = (d rho / dt) / theta' = 2 (v . v') |v|^2
    slope[i] = 2.0 * vv * r;
  }
  for (std::size_t i = 1; i < n; ++i) {
    theta[i] = theta[i - 1] + 0.5 * h * (f[i - 1] + f[i]) + h * h / 12.0 * (fp[i - 1] - fp[i]);
    if (!(theta[i] > theta[i - 1])) throw NumericalError("orbit_of: theta is not increasing");
  }
  const HermiteCubic spline(theta, rho, slope);

  // rho(theta) is steep where |v| is large, so the uniform theta-grid is refined
  // until its Simpson area reproduces 2 pi (the t-span) well inside tolerance, or
  // stops improving because the remaining defect comes from the theta nodes.
  Orbit orbit;
  orbit.theta_max = theta.back();
  std::size_t m = n % 2 == 1 ? n : n + 1;
  const std::size_t max_nodes = 64 * (m - 1) + 1;
  double previous = 0.0;
  for (;;) {
    orbit.rho.resize(m);
    orbit.rho_prime.resize(m);
    const auto grid = uniform_grid(orbit.theta_max, m);
    for (std::size_t i = 0; i < m; ++i) {
      const Jet j = spline.jet(grid[i]);
      orbit.rho[i] = j.value;
      orbit.rho_prime[i] = j.d1;
    }
    const double area = orbit_area(orbit);
    if (std::abs(area - two_pi) <= 0.1 * orbit_area_tolerance || m >= max_nodes ||
        std::abs(area - previous) <= 0.01 * orbit_area_tolerance) {
      break;
    }
    previous = area;
    m = 2 * (m - 1) + 1;
  }
  if (const auto why = orbit_defect(orbit); !why.empty()) {
    throw NumericalError("orbit_of produced an invalid orbit: " + why);
  }
  return orbit;
}

FundamentalCurve curve_of_profile(const OrbitProfile& profile, int steps) {
  if (steps < min_steps) throw DomainError("steps must be at least 16");
  const SweepParametrization sweep(profile, std::max(4096, steps));
  FundamentalCurve curve;
  curve.t = uniform_grid(two_pi, static_cast<std::size_t>(steps) + 1);
  curve.v.reserve(curve.t.size());
  curve.vp.reserve(curve.t.size());
  for (double t : curve.t) {
    const double th = sweep.theta(t);
    const Jet e = profile.log_rho(th);
    const double sr = std::exp(0.5 * e.value);
    const double rho = sr * sr;
    const double c = std::cos(th), s = std::sin(th);
    // v' = (1/rho) [ rho'/(2 sqrt rho) (c, s) + sqrt rho (-s, c) ], rho' = E' rho
    const double radial = 0.5 * e.d1 * sr / rho;
    const double tangential = 1.0 / sr;
    curve.v.push_back({sr * c, sr * s});
    curve.vp.push_back({radial * c - tangential * s, radial * s + tangential * c});
  }
  return curve;
}

FundamentalCurve curve_of_orbit(const Orbit& orbit, int steps) {
  return curve_of_profile(OrbitProfile::from_orbit(orbit), steps);
}

Potential potential_of_curve(const FundamentalCurve& curve, Interpolation interp) {
  if (const auto why = curve_defect(curve); !why.empty()) throw InputError("curve: " + why);
  const std::size_t n = curve.t.size();
  if (n < static_cast<std::size_t>(min_sample_count)) {
    throw InputError("potential_of_curve: need at least 17 nodes");
  }
  const double h = two_pi / static_cast<double>(n - 1);
  const auto& w = curve.vp;
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 acc;
    if (i == 0) {
      acc = (1.0 / (2.0 * h)) * ((-3.0) * w[0] + 4.0 * w[1] - w[2]);
    } else if (i + 1 == n) {
      acc = (1.0 / (2.0 * h)) * (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]);
    } else {
      acc = (1.0 / (2.0 * h)) * (w[i + 1] - w[i - 1]);
    }
    q[i] = wedge(acc, w[i]);
  }
  return Potential::sampled(std::move(q), interp);
}

Potential potential_of_profile(const OrbitProfile& profile, int steps) {
  if (steps < min_steps) throw DomainError("steps must be at least 16");
  auto sweep = std::make_shared<const SweepParametrization>(profile, std::max(4096, steps));
  return Potential::function(
      [sweep](double t) {
        const Jet e = sweep->profile().log_rho(sweep->theta(t));
        // (2 rho'' rho - 3 rho'^2 - 4 rho^2) / (4 rho^4) with rho = exp(E)
        return (2.0 * e.d2 - e.d1 * e.d1 - 4.0) * std::exp(-2.0 * e.value) / 4.0;
      },
      steps + 1);
}

Potential potential_of_orbit(const Orbit& orbit, int steps) {
  return potential_of_profile(OrbitProfile::from_orbit(orbit), steps);
}

}  // namespace hillmono
