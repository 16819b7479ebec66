#pragma once

// Inverse monodromy: for a target g in G0 and perturbation coefficients h, build
// the orbit
//
//     rho(theta) = exp(P1(theta) + r(theta / theta_M) + c theta^2 (theta_M - theta)^2)
//
// whose potential has lifted monodromy g. P1 is the Hermite cubic fixing the
// endpoint data, r is a combination of bump functions vanishing to first order
// at 0 and 1 with zero mean, and c normalizes the swept area to 2 pi.

#include <array>
#include <vector>

#include "hillmono/cover_group.hpp"
#include "hillmono/hill_integrator.hpp"
#include "hillmono/kepler.hpp"
#include "hillmono/potential.hpp"

namespace hillmono {

inline constexpr int default_perturbation_size = 8;

struct PerturbationCoeffs {
  std::vector<double> a;  // a_1, ..., a_K
};

// P1(theta) = coeffs[2] theta^2 + coeffs[3] theta^3 (constant and linear terms vanish).
struct CubicPoly {
  std::array<double, 4> coeffs{};

  Jet jet(double theta) const;
};

CubicPoly base_polynomial(double theta_M, double rho0, double nu0);

// r(x) = sum_k a_k b_k(x) on [0, 1], where b_k = psi_k - (int psi_k / int psi_0) psi_0
// and psi_k(x) = x^2 (1 - x)^2 T_k(2x - 1).
class Perturbation {
 public:
  Perturbation() = default;
  explicit Perturbation(PerturbationCoeffs h);

  Jet jet(double x) const;
  const PerturbationCoeffs& coeffs() const { return h_; }

 private:
  PerturbationCoeffs h_;
  std::vector<double> mean_ratio_;  // int psi_k / int psi_0
};

// Solves integral over [0, theta_M] of exp(P1 + r + c w) = 2 pi for c, w = theta^2 (theta_M - theta)^2.
double normalize_c(double theta_M, const CubicPoly& p1, const Perturbation& r);

class SynthesizedOrbit {
 public:
  SynthesizedOrbit(double theta_M, double rho0, double nu0, PerturbationCoeffs h);

  double theta_max() const { return theta_M_; }
  const CubicPoly& base() const { return p1_; }
  const Perturbation& perturbation() const { return r_; }
  double c() const { return c_; }

  // Jet of log rho.
  Jet log_rho(double theta) const;
  OrbitProfile profile() const;
  // Samples on a uniform grid of n points with analytic rho' and rho''.
  Orbit sample(int n) const;

 private:
  double theta_M_;
  CubicPoly p1_;
  Perturbation r_;
  double c_ = 0.0;
};

// Potential with monodromy g (g must lie in G0). Only the continuous case is
// supported; smoothness order p >= 1 raises DomainError.
Potential psi(const CoverElement& g, const PerturbationCoeffs& h, int steps = default_steps,
              int p = 0);

}  // namespace hillmono
