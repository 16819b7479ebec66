#include "hillmono/numerics.hpp"

#include <algorithm>
#include <stdexcept>

#include "hillmono/errors.hpp"

namespace hillmono {

double wrap_angle(double delta) {
  double r = std::remainder(delta, two_pi);
  if (r <= -pi) r += two_pi;
  return r;
}

double track_argument(const std::function<Vec2(double)>& path, int initial_segments) {
  constexpr int max_depth = 48;
  struct Piece {
    double s0, s1;
    Vec2 f0, f1;
    int depth;
  };
  const int n = std::max(1, initial_segments);
  double total = 0.0;
  std::vector<Piece> stack;
  Vec2 prev = path(0.0);
  for (int i = 0; i < n; ++i) {
    const double s0 = static_cast<double>(i) / n;
    const double s1 = static_cast<double>(i + 1) / n;
    const Vec2 next = path(s1);
    stack.push_back({s0, s1, prev, next, 0});
    while (!stack.empty()) {
      Piece p = stack.back();
      stack.pop_back();
      // The midpoint is always sampled: a piece whose endpoints agree may still
      // hide a full turn.
      const double sm = 0.5 * (p.s0 + p.s1);
      const Vec2 fm = path(sm);
      const double d0 = wrap_angle(fm.arg() - p.f0.arg());
      const double d1 = wrap_angle(p.f1.arg() - fm.arg());
      if ((std::abs(d0) < half_pi && std::abs(d1) < half_pi) || p.depth >= max_depth) {
        total += d0 + d1;
        continue;
      }
      stack.push_back({sm, p.s1, fm, p.f1, p.depth + 1});
      stack.push_back({p.s0, sm, p.f0, fm, p.depth + 1});
    }
    prev = next;
  }
  return total;
}

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double v = f(a + i * h);
    (i % 2 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

double simpson_samples(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  if (n < 3 || n % 2 == 0) {
    throw DomainError("simpson_samples: need an odd number (>= 3) of samples");
  }
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 ? odd : even) += values[i];
  return h / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

HermiteCubic::HermiteCubic(std::vector<double> x, std::vector<double> y,
                           std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
  if (x_.size() < 2 || y_.size() != x_.size() || m_.size() != x_.size()) {
    throw DomainError("HermiteCubic: size mismatch or fewer than 2 knots");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw DomainError("HermiteCubic: knots not increasing");
  }
}

HermiteCubic HermiteCubic::not_a_knot(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  if (n < 4 || y.size() != n) throw DomainError("not_a_knot spline needs >= 4 points");
  std::vector<double> dx(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dx[i] = x[i + 1] - x[i];
    slope[i] = (y[i + 1] - y[i]) / dx[i];
  }
  // Tridiagonal system for the knot slopes: lower l, diagonal m, upper u.
  std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0), rhs(n, 0.0);
  {
    const double span = x[2] - x[0];
    di[0] = dx[1];
    up[0] = span;
    rhs[0] = ((dx[0] + 2.0 * span) * dx[1] * slope[0] + dx[0] * dx[0] * slope[1]) / span;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    lo[i] = dx[i];
    di[i] = 2.0 * (dx[i - 1] + dx[i]);
    up[i] = dx[i - 1];
    rhs[i] = 3.0 * (dx[i] * slope[i - 1] + dx[i - 1] * slope[i]);
  }
  {
    const double span = x[n - 1] - x[n - 3];
    lo[n - 1] = span;
    di[n - 1] = dx[n - 3];
    rhs[n - 1] = (dx[n - 2] * dx[n - 2] * slope[n - 3] +
                  (2.0 * span + dx[n - 2]) * dx[n - 3] * slope[n - 2]) /
                 span;
  }
  // Thomas algorithm.
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lo[i] / di[i - 1];
    di[i] -= w * up[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> m(n);
  m[n - 1] = rhs[n - 1] / di[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m[i] = (rhs[i] - up[i] * m[i + 1]) / di[i];
  return HermiteCubic(std::move(x), std::move(y), std::move(m));
}

std::size_t HermiteCubic::locate(double t) const {
  if (t <= x_.front()) return 0;
  if (t >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

Jet HermiteCubic::jet(double t) const {
  const std::size_t i = locate(t);
  const double h = x_[i + 1] - x_[i];
  const double u = (t - x_[i]) / h;
  const double y0 = y_[i], y1 = y_[i + 1];
  const double m0 = m_[i] * h, m1 = m_[i + 1] * h;
  // Hermite basis in u.
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  const double d00 = 6 * u2 - 6 * u, d10 = 3 * u2 - 4 * u + 1;
  const double d01 = -6 * u2 + 6 * u, d11 = 3 * u2 - 2 * u;
  const double s00 = 12 * u - 6, s10 = 6 * u - 4;
  const double s01 = -12 * u + 6, s11 = 6 * u - 2;
  Jet j;
  j.value = h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
  j.d1 = (d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1) / h;
  j.d2 = (s00 * y0 + s10 * m0 + s01 * y1 + s11 * m1) / (h * h);
  return j;
}

}  // namespace hillmono
