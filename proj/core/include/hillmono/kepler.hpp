#pragma once

// The Kepler transform between potentials, fundamental curves and orbits.
//
// A fundamental curve v(t) (first row of Phi) satisfies v ^ v' = 1, so in polar
// form v = sqrt(rho(theta)) (cos theta, sin theta) it sweeps area t/2 in time t:
// theta' = 1 / rho and the integral of rho over [0, theta_max] is 2 pi. The
// potential is recovered as q = v'' ^ v', or directly from rho as
//
//     q = (2 rho'' rho - 3 rho'^2 - 4 rho^2) / (4 rho^4)   at theta(t).

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hillmono/hill_integrator.hpp"
#include "hillmono/mat2.hpp"
#include "hillmono/numerics.hpp"
#include "hillmono/potential.hpp"

namespace hillmono {

struct FundamentalCurve {
  std::vector<double> t;  // uniform over [0, 2 pi]
  std::vector<Vec2> v;
  std::vector<Vec2> vp;
};

struct Orbit {
  double theta_max = 0.0;
  std::vector<double> rho;         // on the uniform grid over [0, theta_max]
  std::vector<double> rho_prime;   // empty when unavailable
  std::vector<double> rho_second;  // empty when unavailable

  double theta_at(std::size_t i) const {
    return theta_max * static_cast<double>(i) / static_cast<double>(rho.size() - 1);
  }
};

inline constexpr double curve_start_tolerance = 1e-10;
inline constexpr double curve_wronskian_tolerance = 1e-7;
inline constexpr double orbit_rho0_tolerance = 1e-8;
inline constexpr double orbit_slope0_tolerance = 1e-6;
inline constexpr double orbit_area_tolerance = 1e-7;

// Empty string when the invariants hold, otherwise a description of the first
// violation.
std::string curve_defect(const FundamentalCurve& curve);
std::string orbit_defect(const Orbit& orbit);

// Integral of rho over [0, theta_max] from the samples (composite Simpson,
// with a 3/8 panel at the end for an even sample count).
double orbit_area(const Orbit& orbit);

// A smooth radial profile theta -> rho(theta) on [0, theta_max], represented by
// the jet of log rho so that steep profiles stay finite.
class OrbitProfile {
 public:
  OrbitProfile(double theta_max, std::function<Jet(double)> log_rho);
  // Splines through the samples: Hermite with the stored slopes when present,
  // otherwise a not-a-knot C2 cubic.
  static OrbitProfile from_orbit(const Orbit& orbit);

  double theta_max() const { return theta_max_; }
  Jet log_rho(double theta) const { return log_rho_(theta); }
  double rho(double theta) const { return std::exp(log_rho_(theta).value); }

 private:
  double theta_max_;
  std::function<Jet(double)> log_rho_;
};

// Inverse of t(theta) = integral of rho over [0, theta] (the equal-area clock).
class SweepParametrization {
 public:
  explicit SweepParametrization(OrbitProfile profile, int intervals = 4096);

  double theta(double t) const;
  double area() const { return cumulative_.back(); }
  const OrbitProfile& profile() const { return profile_; }

 private:
  double partial(std::size_t j, double theta) const;

  OrbitProfile profile_;
  double width_;
  std::vector<double> cumulative_;
  GaussRule rule_;
};

FundamentalCurve curve_of(const Potential& q, int steps = default_steps);
Orbit orbit_of(const FundamentalCurve& curve);
FundamentalCurve curve_of_orbit(const Orbit& orbit, int steps = default_steps);
FundamentalCurve curve_of_profile(const OrbitProfile& profile, int steps = default_steps);
Potential potential_of_curve(const FundamentalCurve& curve,
                             Interpolation interp = Interpolation::cubic);
Potential potential_of_orbit(const Orbit& orbit, int steps = default_steps);
// Evaluates q(t) on demand through the sweep parametrization.
Potential potential_of_profile(const OrbitProfile& profile, int steps = default_steps);

}  // namespace hillmono
