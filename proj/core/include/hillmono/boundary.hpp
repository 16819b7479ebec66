#pragma once

// Two-point boundary conditions for -v'' + q v = 0 on [0, 2 pi].
//
// Separated conditions fix the directions of (v(0), v'(0)) and (v(2 pi), v'(2 pi)):
// (cos theta0, sin theta0) and (cos theta2pi, sin theta2pi) up to scale.
// Coupled conditions read (v, v')(2 pi) = A (v, v')(0) for an invertible A; they
// have a solution iff tr(a A^{-1} Phi(2 pi)) = a + sgn(det A)/a, a = sqrt|det A|.

#include <optional>

#include "hillmono/cover_group.hpp"
#include "hillmono/hill_integrator.hpp"
#include "hillmono/potential.hpp"

namespace hillmono {

inline constexpr double default_residual_tolerance = 1e-7;

class SeparatedBC {
 public:
  // theta0 in [0, pi), theta2pi in (0, pi].
  SeparatedBC(double theta0, double theta2pi);

  static SeparatedBC dirichlet();
  static SeparatedBC neumann();

  double theta0() const { return theta0_; }
  double theta2pi() const { return theta2pi_; }

 private:
  double theta0_;
  double theta2pi_;
};

class GeneralBC {
 public:
  // Throws DomainError when |det A| <= 1e-12.
  explicit GeneralBC(const Mat2& A);

  const Mat2& A() const { return A_; }
  double a() const { return a_; }
  double det_sign() const { return A_.det() > 0.0 ? 1.0 : -1.0; }
  // B = a A^{-1}, det B = sgn(det A).
  Mat2 normalized_inverse() const;

 private:
  Mat2 A_;
  double a_;
};

struct SeparatedCheck {
  bool has_solution = false;
  double residual = 0.0;  // |-sin theta2pi u + cos theta2pi u'| / |(u, u')| at 2 pi
};

SeparatedCheck separated_check(const Potential& q, const SeparatedBC& bc,
                               double tol = default_residual_tolerance,
                               int steps = default_steps);
bool separated_has_solution(const Potential& q, const SeparatedBC& bc,
                            double tol = default_residual_tolerance, int steps = default_steps);

struct SeparatedIndex {
  int n = 0;      // hyperplane label: the clockwise turning of (u, u') is theta0 - theta2pi + n pi
  int rank = 0;   // eigenvalue rank, n - 1 (0 for the ground state)
  double residual = 0.0;  // distance of the unrounded label from n
};

// Requires a solution; throws NumericalError when the label is not within 1e-4 of an integer.
SeparatedIndex separated_index(const Potential& q, const SeparatedBC& bc,
                               int steps = default_steps);

// The s for which q0 - s q+ satisfies the separated condition with the given rank.
double separated_eigenvalue(const Potential& q0, const Potential& qplus, const SeparatedBC& bc,
                            int rank, int steps = default_steps);

struct GeneralCheck {
  bool has_solution = false;
  double trace = 0.0;     // tr(a A^{-1} Phi(2 pi))
  double expected = 0.0;  // a + sgn(det A) / a
  double residual = 0.0;  // |trace - expected|
};

GeneralCheck general_check(const Potential& q, const GeneralBC& bc,
                           double tol = default_residual_tolerance, int steps = default_steps);
bool general_has_solution(const Potential& q, const GeneralBC& bc,
                          double tol = default_residual_tolerance, int steps = default_steps);
// Every solution satisfies the condition: det A = 1 and Phi(2 pi) = A.
bool general_all_solutions(const Potential& q, const GeneralBC& bc,
                           double tol = default_residual_tolerance, int steps = default_steps);

struct BetaImage {
  CoverElementPM element;  // B~ mu
  CoverElementPM lift;     // B~
  double trace = 0.0;
  std::optional<Stratum> stratum;  // plus component only
};

// Lifts B = a A^{-1} with left Iwasawa angle in [0, 2 pi) (through R~ when det A < 0)
// and returns the lifted product B~ mu.
BetaImage beta_image(const GeneralBC& bc, const CoverElement& mu);

}  // namespace hillmono
