#pragma once

// The universal cover G of SL(2,R) and its two-component extension G^+-.
//
// An element is stored as a matrix plus the real winding omega of the column
// direction mat*e2: omega is the total counterclockwise variation of arg(gamma(s) e2)
// along any path gamma from the identity (plus component) or from the base point
// R~ = lift of diag(-1, 1) (minus component). Hence
//
//     arg(mat * e2) == pi/2 + omega   (mod 2 pi).
//
// All rotation blocks R(theta) in the chart formulas are clockwise:
// R(theta) = [[cos, sin], [-sin, cos]].

#include <cstdint>
#include <optional>
#include <string_view>

#include "hillmono/mat2.hpp"

namespace hillmono {

enum class Component : std::uint8_t { plus, minus };

inline constexpr double det_tolerance = 1e-9;
inline constexpr double congruence_tolerance = 1e-7;

// Distance of arg(mat*e2) - pi/2 - omega from the nearest multiple of 2 pi.
double congruence_defect(const Mat2& mat, double omega);

class CoverElement {
 public:
  CoverElement() = default;
  CoverElement(const Mat2& mat, double omega) : mat_(mat), omega_(omega) {}

  static CoverElement identity() { return {}; }

  const Mat2& mat() const { return mat_; }
  double omega() const { return omega_; }
  double trace() const { return mat_.trace(); }

  // det(mat) = 1 within det_tolerance and the congruence invariant holds.
  bool is_valid() const;

 private:
  Mat2 mat_ = Mat2::identity();
  double omega_ = 0.0;
};

class CoverElementPM {
 public:
  CoverElementPM() = default;
  CoverElementPM(Component component, const Mat2& mat, double omega)
      : component_(component), mat_(mat), omega_(omega) {}
  // Plus-component embedding of G into G^+-.
  CoverElementPM(const CoverElement& g)  // NOLINT(google-explicit-constructor)
      : component_(Component::plus), mat_(g.mat()), omega_(g.omega()) {}

  // The distinguished lift of R = diag(-1, 1), omega = 0.
  static CoverElementPM reflection_base();

  Component component() const { return component_; }
  const Mat2& mat() const { return mat_; }
  double omega() const { return omega_; }
  double trace() const { return mat_.trace(); }

  bool is_valid() const;
  // Plus-component part; std::nullopt for minus elements.
  std::optional<CoverElement> plus() const;

 private:
  Component component_ = Component::plus;
  Mat2 mat_ = Mat2::identity();
  double omega_ = 0.0;
};

enum class IwasawaSide : std::uint8_t { left, right };

struct IwasawaCoords {
  double theta = 0.0;
  double rho = 1.0;
  double nu = 0.0;
};

struct CartanCoords {
  double alpha = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

enum class StratumKind : std::uint8_t {
  elliptic,
  parabolic_vertex,
  parabolic_leaf_plus,
  parabolic_leaf_minus,
  hyperbolic,
  trace_zero_boundary,
};

std::string_view to_string(StratumKind kind);
std::optional<StratumKind> stratum_kind_from_string(std::string_view name);

struct Stratum {
  double trace = 0.0;
  StratumKind kind = StratumKind::parabolic_vertex;
  // Index n of the slab A_n = phi_C((n pi - pi/2, n pi + pi/2) x R^2); for
  // trace_zero_boundary the integer nearest to alpha/pi.
  int component_index = 0;
};

inline constexpr double default_classify_tolerance = 1e-8;

// Left Iwasawa chart: mat = R(theta) diag(sqrt rho, 1/sqrt rho) [[1,0],[nu/2,1]],
// omega = -theta.
CoverElement from_left_iwasawa(const IwasawaCoords& coords);
IwasawaCoords to_left_iwasawa(const CoverElement& g);

// Right Iwasawa chart: mat = diag(sqrt rho, 1/sqrt rho) [[1,0],[nu/2,1]] R(theta).
// The winding is obtained by tracking mat*e2 along the straight chart line from
// (0, 1, 0).
CoverElement from_right_iwasawa(const IwasawaCoords& coords);
// theta is lifted into the same pi-window as the left Iwasawa angle -omega.
IwasawaCoords to_right_iwasawa(const CoverElement& g);

// Cartan chart: mat = R(alpha) S with S symmetric positive definite,
// S = cosh r I + sinh r [[cos eta, sin eta], [sin eta, -cos eta]].
CoverElement from_cartan(const CartanCoords& coords);
CartanCoords to_cartan(const CoverElement& g);

// Trace normal form on A_0: tr = 2 exp(-x^2 + y^2 + z^2).
CoverElement phi_x(double x, double y, double z);
// Trace normal form on B_n: tr = c; theta must not be a multiple of pi.
CoverElement phi_y(double theta, double rho, double c);

// The functions f1(x) = arccos(exp(-x^2))/|x| and f2(x) = arccosh(exp(x^2))/|x|,
// continued analytically through 0 (value sqrt 2).
double phi_x_f1(double x);
double phi_x_f2(double x);

// Schur chart for the minus component:
// mat = R(alpha) [[-1/lambda, 0], [nu, lambda]] R(-alpha), tr = lambda - 1/lambda.
CoverElementPM from_schur(double alpha, double lambda, double nu);

// Lifted product on G^+-.
CoverElementPM multiply(const CoverElementPM& g1, const CoverElementPM& g2);
CoverElement multiply(const CoverElement& g1, const CoverElement& g2);

CoverElementPM inverse(const CoverElementPM& g);
CoverElement inverse(const CoverElement& g);

// iota^n: mat = (-1)^n I, omega = -n pi.
CoverElement center_power(int n);

// Continuous angle between v and gamma(s) v along the canonical left-Iwasawa
// straight-line path gamma from I to g (counterclockwise positive).
double arg_variation(const CoverElement& g, Vec2 v);

Stratum classify(const CoverElement& g, double tol = default_classify_tolerance);

// Membership in the open half-space G_theta (plus) or G^-_theta (minus).
bool in_G_theta(const CoverElementPM& g, double theta);

}  // namespace hillmono
