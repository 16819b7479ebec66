#pragma once

#include <algorithm>
#include <cmath>

namespace hillmono {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
  friend constexpr Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

  double norm() const { return std::hypot(x, y); }
  // Standard counterclockwise argument in (-pi, pi].
  double arg() const { return std::atan2(y, x); }
};

constexpr double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
// u ^ v = u.x v.y - u.y v.x
constexpr double wedge(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diag(double p, double q) { return {p, 0.0, 0.0, q}; }

  // Clockwise rotation: rotation(t) * e1 = (cos t, -sin t).
  static Mat2 rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c};
  }

  constexpr double det() const { return a * d - b * c; }
  constexpr double trace() const { return a + d; }

  constexpr Vec2 col0() const { return {a, c}; }
  constexpr Vec2 col1() const { return {b, d}; }
  constexpr Vec2 row0() const { return {a, b}; }
  constexpr Vec2 row1() const { return {c, d}; }

  Mat2 inverse() const {
    const double D = det();
    return {d / D, -b / D, -c / D, a / D};
  }

  friend constexpr Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend constexpr Mat2 operator+(const Mat2& m, const Mat2& n) {
    return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
  }
  friend constexpr Mat2 operator-(const Mat2& m, const Mat2& n) {
    return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

inline double max_abs(const Mat2& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

inline double max_abs_diff(const Mat2& m, const Mat2& n) { return max_abs(m - n); }

}  // namespace hillmono
