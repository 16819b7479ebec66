#include "hillmono/cover_group.hpp"

#include <cmath>
#include <numbers>

#include "hillmono/errors.hpp"
#include "hillmono/numerics.hpp"

namespace hillmono {

namespace {

constexpr double quarter_turn = 0.25 * pi;

int segments_for(double angle) {
  return static_cast<int>(std::ceil(std::abs(angle) / quarter_turn)) + 1;
}

bool det_matches(const Mat2& m, double expected) {
  const double scale = std::max(1.0, max_abs(m) * max_abs(m));
  return std::abs(m.det() - expected) <= det_tolerance * scale;
}

// Unit vector at counterclockwise angle phi.
Vec2 direction(double phi) { return {std::cos(phi), std::sin(phi)}; }

Mat2 lower_unipotent(double nu) { return {1.0, 0.0, 0.5 * nu, 1.0}; }

Mat2 left_iwasawa_matrix(double theta, double rho, double nu) {
  const double sr = std::sqrt(rho);
  return Mat2::rotation(theta) * (Mat2::diag(sr, 1.0 / sr) * lower_unipotent(nu));
}

Mat2 right_iwasawa_matrix(double theta, double rho, double nu) {
  const double sr = std::sqrt(rho);
  return (Mat2::diag(sr, 1.0 / sr) * lower_unipotent(nu)) * Mat2::rotation(theta);
}

Mat2 schur_matrix(double alpha, double lambda, double nu) {
  const Mat2 middle{-1.0 / lambda, 0.0, nu, lambda};
  return Mat2::rotation(alpha) * middle * Mat2::rotation(-alpha);
}

// Symmetric positive factor of the Cartan chart.
Mat2 cartan_symmetric(double x2, double x3) {
  const double r = std::hypot(x2, x3);
  const double ch = std::cosh(r);
  // sinh(r)/r, continuous at 0.
  const double shc = r < 1e-8 ? 1.0 + r * r / 6.0 : std::sinh(r) / r;
  const double sc = shc * x2;  // sinh r cos eta
  const double ss = shc * x3;  // sinh r sin eta
  return {ch + sc, ss, ss, ch - sc};
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

// Winding of m * u(s), where u(s) rotates continuously from e2 by `sweep`.
double transported_winding(const Mat2& m, double sweep) {
  return track_argument([&](double s) { return m * direction(half_pi + s * sweep); },
                        segments_for(sweep));
}

}  // namespace

double congruence_defect(const Mat2& mat, double omega) {
  return std::abs(wrap_angle(mat.col1().arg() - half_pi - omega));
}

bool CoverElement::is_valid() const {
  return std::isfinite(omega_) && det_matches(mat_, 1.0) &&
         congruence_defect(mat_, omega_) <= congruence_tolerance;
}

CoverElementPM CoverElementPM::reflection_base() {
  return {Component::minus, Mat2::diag(-1.0, 1.0), 0.0};
}

bool CoverElementPM::is_valid() const {
  const double sign = component_ == Component::plus ? 1.0 : -1.0;
  return std::isfinite(omega_) && det_matches(mat_, sign) &&
         congruence_defect(mat_, omega_) <= congruence_tolerance;
}

std::optional<CoverElement> CoverElementPM::plus() const {
  if (component_ != Component::plus) return std::nullopt;
  return CoverElement(mat_, omega_);
}

std::string_view to_string(StratumKind kind) {
  switch (kind) {
    case StratumKind::elliptic: return "elliptic";
    case StratumKind::parabolic_vertex: return "parabolic_vertex";
    case StratumKind::parabolic_leaf_plus: return "parabolic_leaf_plus";
    case StratumKind::parabolic_leaf_minus: return "parabolic_leaf_minus";
    case StratumKind::hyperbolic: return "hyperbolic";
    case StratumKind::trace_zero_boundary: return "trace_zero_boundary";
  }
  return "unknown";
}

std::optional<StratumKind> stratum_kind_from_string(std::string_view name) {
  for (auto k : {StratumKind::elliptic, StratumKind::parabolic_vertex,
                 StratumKind::parabolic_leaf_plus, StratumKind::parabolic_leaf_minus,
                 StratumKind::hyperbolic, StratumKind::trace_zero_boundary}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Iwasawa charts

CoverElement from_left_iwasawa(const IwasawaCoords& coords) {
  require_positive(coords.rho, "left Iwasawa rho");
  return {left_iwasawa_matrix(coords.theta, coords.rho, coords.nu), -coords.theta};
}

IwasawaCoords to_left_iwasawa(const CoverElement& g) {
  const Mat2& m = g.mat();
  // m e2 = (sin theta, cos theta) / sqrt(rho)
  const double theta0 = std::atan2(m.b, m.d);
  const double target = -g.omega();
  const double theta = theta0 + two_pi * std::round((target - theta0) / two_pi);
  const double inv_sr = std::hypot(m.b, m.d);
  const double sr = 1.0 / inv_sr;
  // R(-theta) m = [[sqrt rho, 0], [nu / (2 sqrt rho), 1 / sqrt rho]]
  const double lower_left = std::sin(theta0) * m.a + std::cos(theta0) * m.c;
  return {theta, sr * sr, 2.0 * sr * lower_left};
}

CoverElement from_right_iwasawa(const IwasawaCoords& coords) {
  require_positive(coords.rho, "right Iwasawa rho");
  const auto [theta, rho, nu] = coords;
  const double omega = track_argument(
      [&](double s) {
        return right_iwasawa_matrix(s * theta, 1.0 + s * (rho - 1.0), s * nu).col1();
      },
      segments_for(theta));
  return {right_iwasawa_matrix(theta, rho, nu), omega};
}

IwasawaCoords to_right_iwasawa(const CoverElement& g) {
  const Mat2& m = g.mat();
  // First row is sqrt(rho) (cos theta, sin theta).
  const double theta0 = std::atan2(m.b, m.a);
  const double rho = m.a * m.a + m.b * m.b;
  const double sr = std::sqrt(rho);
  const double nu = 2.0 * sr * (m.c * std::cos(theta0) + m.d * std::sin(theta0));

  // Same pi-window as the left Iwasawa angle -omega.
  const double theta_left = -g.omega();
  const double window = std::floor(theta_left / pi);
  const double center = (window + 0.5) * pi;
  double theta = theta0 + two_pi * std::round((center - theta0) / two_pi);
  if (std::abs(theta - center) > half_pi + 1e-6) {
    throw NumericalError("to_right_iwasawa: matrix angle inconsistent with winding window");
  }
  if (theta_left == window * pi && std::abs(theta - theta_left) <= 1e-9) theta = theta_left;
  return {theta, rho, nu};
}

// ---------------------------------------------------------------------------
// Cartan chart and trace normal forms

CoverElement from_cartan(const CartanCoords& coords) {
  const Mat2 s = cartan_symmetric(coords.x2, coords.x3);
  // s e2 lies in the open upper half-plane, so its argument is in (0, pi).
  const double omega = -coords.alpha + std::atan2(s.d, s.b) - half_pi;
  return {Mat2::rotation(coords.alpha) * s, omega};
}

CartanCoords to_cartan(const CoverElement& g) {
  const Mat2& m = g.mat();
  const double alpha0 = std::atan2(m.b - m.c, m.a + m.d);
  const Mat2 s = Mat2::rotation(-alpha0) * m;
  const double half_diff = 0.5 * (s.a - s.d);
  const double off = 0.5 * (s.b + s.c);
  const double sh = std::hypot(half_diff, off);
  const double r = std::asinh(sh);
  double x2 = 0.0, x3 = 0.0;
  if (sh > 0.0) {
    x2 = r * half_diff / sh;
    x3 = r * off / sh;
  }
  const Mat2 sym = cartan_symmetric(x2, x3);
  const double alpha_est = std::atan2(sym.d, sym.b) - half_pi - g.omega();
  const double alpha = alpha0 + two_pi * std::round((alpha_est - alpha0) / two_pi);
  return {alpha, x2, x3};
}

double phi_x_f1(double x) {
  const double u = x * x;
  if (std::abs(x) < 1e-4) return std::numbers::sqrt2 * (1.0 - u / 6.0 + u * u / 120.0);
  // arccos(exp(-u)) = 2 asin(sqrt((1 - exp(-u)) / 2))
  return 2.0 * std::asin(std::sqrt(-0.5 * std::expm1(-u))) / std::abs(x);
}

double phi_x_f2(double x) {
  const double u = x * x;
  if (std::abs(x) < 1e-4) return std::numbers::sqrt2 * (1.0 + u / 6.0 + u * u / 120.0);
  // arccosh(exp(u)) = u + log(1 + sqrt(1 - exp(-2u)))
  return (u + std::log1p(std::sqrt(-std::expm1(-2.0 * u)))) / std::abs(x);
}

CoverElement phi_x(double x, double y, double z) {
  const double f2 = phi_x_f2(std::hypot(y, z));
  return from_cartan({x * phi_x_f1(x), y * f2, z * f2});
}

CoverElement phi_y(double theta, double rho, double c) {
  require_positive(rho, "phi_Y rho");
  const double s = std::sin(theta);
  if (std::abs(s) <= 1e-12) throw DomainError("phi_Y: theta must not be a multiple of pi");
  const double sr = std::sqrt(rho);
  const double nu = 2.0 * sr * (c - (sr + 1.0 / sr) * std::cos(theta)) / s;
  return from_left_iwasawa({theta, rho, nu});
}

// ---------------------------------------------------------------------------
// Minus component, products

CoverElementPM from_schur(double alpha, double lambda, double nu) {
  require_positive(lambda, "Schur lambda");
  const double omega = track_argument(
      [&](double s) {
        return schur_matrix(s * alpha, 1.0 + s * (lambda - 1.0), s * nu).col1();
      },
      segments_for(alpha));
  return {Component::minus, schur_matrix(alpha, lambda, nu), omega};
}

CoverElementPM multiply(const CoverElementPM& g1, const CoverElementPM& g2) {
  const Component comp =
      g1.component() == g2.component() ? Component::plus : Component::minus;
  const double omega = g1.omega() + transported_winding(g1.mat(), g2.omega());
  return {comp, g1.mat() * g2.mat(), omega};
}

CoverElement multiply(const CoverElement& g1, const CoverElement& g2) {
  return {g1.mat() * g2.mat(), g1.omega() + transported_winding(g1.mat(), g2.omega())};
}

CoverElementPM inverse(const CoverElementPM& g) {
  const Mat2 inv = g.mat().inverse();
  const double omega0 = inv.col1().arg() - half_pi;
  const double residual = g.omega() + transported_winding(g.mat(), omega0);
  // Shifting the inverse's winding by 2 pi k shifts the product winding by
  // +-2 pi k depending on whether g preserves orientation.
  const double k = std::round(residual / two_pi);
  const double sign = g.component() == Component::plus ? 1.0 : -1.0;
  return {g.component(), inv, omega0 - sign * two_pi * k};
}

CoverElement inverse(const CoverElement& g) {
  const CoverElementPM h = inverse(CoverElementPM(g));
  return {h.mat(), h.omega()};
}

CoverElement center_power(int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return {Mat2::diag(sign, sign), -static_cast<double>(n) * pi};
}

double arg_variation(const CoverElement& g, Vec2 v) {
  if (std::abs(v.norm() - 1.0) > 1e-9) throw DomainError("arg_variation: v must be a unit vector");
  if (v.x == 0.0 && v.y == 1.0) return g.omega();
  const auto [theta, rho, nu] = to_left_iwasawa(g);
  return track_argument(
      [&](double s) { return left_iwasawa_matrix(s * theta, 1.0 + s * (rho - 1.0), s * nu) * v; },
      segments_for(theta));
}

Stratum classify(const CoverElement& g, double tol) {
  if (!(tol > 0.0)) throw DomainError("classify: tolerance must be positive");
  Stratum out;
  out.trace = g.trace();
  const double alpha = to_cartan(g).alpha;
  const double n = std::round(alpha / pi);
  out.component_index = static_cast<int>(n);
  if (half_pi - std::abs(alpha - n * pi) <= tol) {
    out.kind = StratumKind::trace_zero_boundary;
    return out;
  }
  const double tr = out.trace;
  if (std::abs(tr) < 2.0 - tol) {
    out.kind = StratumKind::elliptic;
  } else if (std::abs(tr) > 2.0 + tol) {
    out.kind = StratumKind::hyperbolic;
  } else {
    const double sign = tr > 0.0 ? 1.0 : -1.0;
    const Mat2 center = Mat2::diag(sign, sign);
    if (max_abs_diff(g.mat(), center) <= tol) {
      out.kind = StratumKind::parabolic_vertex;
    } else {
      const Mat2 nil = sign * g.mat() - Mat2::identity();
      const Vec2 e1{1.0, 0.0}, e2{0.0, 1.0};
      const Vec2 v = (nil * e1).norm() >= (nil * e2).norm() ? e1 : e2;
      out.kind = wedge(nil * v, v) > 0.0 ? StratumKind::parabolic_leaf_plus
                                         : StratumKind::parabolic_leaf_minus;
    }
  }
  return out;
}

bool in_G_theta(const CoverElementPM& g, double theta) {
  if (g.component() == Component::plus) return -g.omega() > theta;
  // R~ is its own inverse.
  const CoverElementPM h = multiply(CoverElementPM::reflection_base(), g);
  return -h.omega() > theta;
}

}  // namespace hillmono
