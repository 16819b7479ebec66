#include "hillmono/boundary.hpp"

#include <cmath>
#include <string>

#include "hillmono/errors.hpp"
#include "hillmono/numerics.hpp"

namespace hillmono {

namespace {

constexpr double label_tolerance = 1e-4;

// Unrounded hyperplane label of the solution starting in direction theta0:
// (clockwise turning of (u, u') - (theta0 - theta2pi)) / pi.
double separated_label(std::span<const double> half_samples, const SeparatedBC& bc) {
  const double clockwise = -solution_winding_from_samples(half_samples, bc.theta0());
  return (clockwise - (bc.theta0() - bc.theta2pi())) / pi;
}

}  // namespace

SeparatedBC::SeparatedBC(double theta0, double theta2pi) : theta0_(theta0), theta2pi_(theta2pi) {
  if (!(theta0 >= 0.0 && theta0 < pi)) throw DomainError("SeparatedBC: theta0 must lie in [0, pi)");
  if (!(theta2pi > 0.0 && theta2pi <= pi)) {
    throw DomainError("SeparatedBC: theta2pi must lie in (0, pi]");
  }
}

SeparatedBC SeparatedBC::dirichlet() { return {half_pi, half_pi}; }

SeparatedBC SeparatedBC::neumann() { return {0.0, pi}; }

GeneralBC::GeneralBC(const Mat2& A) : A_(A), a_(std::sqrt(std::abs(A.det()))) {
  const double det = A.det();
  if (!std::isfinite(det) || std::abs(det) <= 1e-12) {
    throw DomainError("GeneralBC: A must be invertible (|det A| > 1e-12)");
  }
}

Mat2 GeneralBC::normalized_inverse() const { return a_ * A_.inverse(); }

SeparatedCheck separated_check(const Potential& q, const SeparatedBC& bc, double tol, int steps) {
  if (!(tol > 0.0)) throw DomainError("separated_check: tolerance must be positive");
  const Mat2 phi = monodromy(q, steps).element.mat();
  const Vec2 end = phi * Vec2{std::cos(bc.theta0()), std::sin(bc.theta0())};
  const double raw = std::abs(-std::sin(bc.theta2pi()) * end.x + std::cos(bc.theta2pi()) * end.y);
  const double residual = raw / end.norm();
  return {residual <= tol, residual};
}

bool separated_has_solution(const Potential& q, const SeparatedBC& bc, double tol, int steps) {
  return separated_check(q, bc, tol, steps).has_solution;
}

SeparatedIndex separated_index(const Potential& q, const SeparatedBC& bc, int steps) {
  const double label = separated_label(half_step_samples(q, steps), bc);
  const double n = std::round(label);
  const double residual = std::abs(label - n);
  if (residual > label_tolerance) {
    throw NumericalError("separated_index: winding label " + std::to_string(label) +
                         " is not an integer; the boundary condition does not hold");
  }
  return {static_cast<int>(n), static_cast<int>(n) - 1, residual};
}

double separated_eigenvalue(const Potential& q0, const Potential& qplus, const SeparatedBC& bc,
                            int rank, int steps) {
  if (rank < 0) throw DomainError("separated_eigenvalue: rank must be nonnegative");
  const auto base = half_step_samples(q0, steps);
  const auto dir = half_step_samples(qplus, steps);
  for (double v : qplus.sample(4097)) {
    if (!(v > 0.0)) throw DomainError("separated_eigenvalue: q+ must be positive");
  }
  std::vector<double> buffer(base.size());
  const double target = rank + 1.0;
  // The label increases with s (Sturm comparison).
  const auto f = [&](double s) {
    for (std::size_t i = 0; i < base.size(); ++i) buffer[i] = base[i] - s * dir[i];
    return separated_label(buffer, bc) - target;
  };
  double lo = 0.0, hi = 0.0;
  double f_lo = f(0.0), f_hi = f_lo;
  double step = 1.0;
  for (int k = 0; f_lo > 0.0 || f_hi < 0.0; ++k) {
    if (k > 200) throw NumericalError("separated_eigenvalue: could not bracket the eigenvalue");
    if (f_lo > 0.0) {
      hi = lo;
      f_hi = f_lo;
      lo -= step;
      f_lo = f(lo);
    } else {
      lo = hi;
      f_lo = f_hi;
      hi += step;
      f_hi = f(hi);
    }
    step *= 2.0;
  }
  return find_root_brent(f, lo, hi, f_lo, f_hi, 1e-13);
}

GeneralCheck general_check(const Potential& q, const GeneralBC& bc, double tol, int steps) {
  if (!(tol > 0.0)) throw DomainError("general_check: tolerance must be positive");
  const Mat2 m1 = bc.normalized_inverse() * monodromy(q, steps).element.mat();
  GeneralCheck out;
  out.trace = m1.trace();
  out.expected = bc.a() + bc.det_sign() / bc.a();
  out.residual = std::abs(out.trace - out.expected);
  out.has_solution = out.residual <= tol;
  return out;
}

bool general_has_solution(const Potential& q, const GeneralBC& bc, double tol, int steps) {
  return general_check(q, bc, tol, steps).has_solution;
}

bool general_all_solutions(const Potential& q, const GeneralBC& bc, double tol, int steps) {
  if (!(tol > 0.0)) throw DomainError("general_all_solutions: tolerance must be positive");
  if (std::abs(bc.A().det() - 1.0) > tol) return false;
  return max_abs_diff(monodromy(q, steps).element.mat(), bc.A()) <= tol;
}

BetaImage beta_image(const GeneralBC& bc, const CoverElement& mu) {
  const Mat2 B = bc.normalized_inverse();
  const bool plus = bc.det_sign() > 0.0;
  const Mat2 reflect = Mat2::diag(-1.0, 1.0);
  const Mat2 unimodular = plus ? B : reflect * B;
  // Left Iwasawa angle: unimodular * e2 = (sin theta, cos theta) / sqrt(rho).
  double theta = std::atan2(unimodular.b, unimodular.d);
  if (theta < 0.0) theta += two_pi;
  const CoverElementPM base(CoverElement(unimodular, -theta));
  BetaImage out;
  out.lift = plus ? base : multiply(CoverElementPM::reflection_base(), base);
  out.element = multiply(out.lift, CoverElementPM(mu));
  out.trace = out.element.trace();
  if (const auto g = out.element.plus()) out.stratum = classify(*g);
  return out;
}

}  // namespace hillmono
