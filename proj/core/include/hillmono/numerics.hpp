#pragma once

// Small numerical toolkit shared by the modules: angle tracking, quadrature,
// piecewise-cubic interpolation and scalar root finding.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "hillmono/mat2.hpp"

namespace hillmono {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double half_pi = 0.5 * std::numbers::pi;

// Reduce an angle difference to (-pi, pi].
double wrap_angle(double delta);

// Continuous counterclockwise argument variation of a nonvanishing planar path
// s -> f(s), s in [0, 1]. The interval is cut into `initial_segments` pieces and
// each piece is bisected until both of its halves turn by less than pi/2.
double track_argument(const std::function<Vec2(double)>& path, int initial_segments);

// Composite Simpson rule with `panels` subintervals (rounded up to even).
double simpson(const std::function<double(double)>& f, double a, double b, int panels);

// Composite Simpson over uniformly spaced samples; requires an odd count >= 3.
double simpson_samples(std::span<const double> values, double h);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

// Value and first two derivatives of a scalar function at a point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Piecewise cubic Hermite interpolant on strictly increasing abscissae.
class HermiteCubic {
 public:
  HermiteCubic() = default;
  HermiteCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes);

  // C2 spline with not-a-knot end conditions (needs at least 4 points).
  static HermiteCubic not_a_knot(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const { return jet(t).value; }
  Jet jet(double t) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::span<const double> knots() const { return x_; }

 private:
  std::size_t locate(double t) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

// Brent's method for a root of f in [a, b]; f(a) and f(b) must differ in sign.
template <class F>
double find_root_brent(F&& f, double a, double b, double fa, double fb, double xtol,
                       int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 2.2e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

// Brent's parabolic/golden-section minimizer on [a, b]. Returns {x_min, f(x_min)}.
template <class F>
std::pair<double, double> minimize_brent(F&& f, double a, double b, double xtol,
                                         int max_iter = 200) {
  constexpr double golden = 0.3819660112501051;
  double x = a + golden * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = 1.5e-8 * std::abs(x) + 0.5 * xtol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;
    bool golden_step = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p; else q = -q;
      if (std::abs(p) < std::abs(0.5 * q * e) && p > q * (a - x) && p < q * (b - x)) {
        e = d;
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (mid >= x) ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x >= mid) ? a - x : b - x;
      d = golden * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

}  // namespace hillmono
