#pragma once

// Fundamental matrix of -v'' + q v = 0 on [0, 2 pi] and the lifted monodromy.
//
// Phi = [[v1, v2], [v1', v2']] with Phi(0) = I, so the first row v = (v1, v2) is
// the fundamental curve and the second column is the solution with data e2.
// Everything is classical RK4 on a fixed uniform grid; the angles are summed from
// per-step argument increments of Phi, so they are consistent with it exactly.

#include <span>
#include <vector>

#include "hillmono/cover_group.hpp"
#include "hillmono/potential.hpp"

namespace hillmono {

inline constexpr int default_steps = 16384;
inline constexpr int min_steps = 16;

struct FundamentalPath {
  std::vector<double> t;
  std::vector<Mat2> phi;
  std::vector<double> theta;  // argument of the first row, theta(0) = 0
  std::vector<double> omega;  // argument variation of the second column, omega(0) = 0
};

struct Monodromy {
  CoverElement element;
  double theta_R = 0.0;
};

// q at the 2 * steps + 1 nodes of the half-step grid (spacing pi / steps).
// Throws InputError on non-finite values.
std::vector<double> half_step_samples(const Potential& q, int steps);

FundamentalPath integrate(const Potential& q, int steps = default_steps);

// Throws NumericalError when theta(2 pi) and the right Iwasawa angle of the
// endpoint disagree by more than 1e-6 (too few steps).
Monodromy monodromy(const Potential& q, int steps = default_steps);
// Same, from precomputed half_step_samples.
Monodromy monodromy_from_samples(std::span<const double> half_samples);

// Smallest steps = base * 2^k (k <= 6) with h * sqrt(max(1, max |q|)) <= 0.05 on
// the half-step grid of `base`. RK4 error grows with the local frequency
// sqrt(|q|), and synthesized potentials can have deep wells.
int resolved_steps(const Potential& q, int base = default_steps);

// Counterclockwise argument variation of Phi(t) (cos phi0, sin phi0) over [0, 2 pi].
double solution_winding(const Potential& q, double phi0, int steps = default_steps);
double solution_winding_from_samples(std::span<const double> half_samples, double phi0);

}  // namespace hillmono
