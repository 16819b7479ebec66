#include "hillmono/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "hillmono/errors.hpp"
#include "hillmono/numerics.hpp"

namespace hillmono {

namespace {

constexpr int normalize_panels = 8192;
constexpr int max_doublings = 200;
constexpr int max_refinements = 200;
constexpr double normalize_rel_tol = 1e-12;

// Integral of x^2 (1 - x)^2 over [0, 1].
constexpr double bump_mass = 1.0 / 30.0;

struct Chebyshev {
  double t = 0.0, dt = 0.0, ddt = 0.0;
};

// T_k(u) and its first two u-derivatives for k = 0..n.
std::vector<Chebyshev> chebyshev_table(int n, double u) {
  std::vector<Chebyshev> out(static_cast<std::size_t>(n) + 1);
  out[0] = {1.0, 0.0, 0.0};
  if (n >= 1) out[1] = {u, 1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const auto& c = out[static_cast<std::size_t>(k)];
    const auto& p = out[static_cast<std::size_t>(k) - 1];
    out[static_cast<std::size_t>(k) + 1] = {2.0 * u * c.t - p.t,
                                            2.0 * c.t + 2.0 * u * c.dt - p.dt,
                                            4.0 * c.dt + 2.0 * u * c.ddt - p.ddt};
  }
  return out;
}

// theta^2 (L - theta)^2 and its derivatives.
Jet area_weight(double L, double th) {
  const double s = L - th;
  return {th * th * s * s, 2.0 * th * s * (L - 2.0 * th),
          2.0 * (L * L - 6.0 * L * th + 6.0 * th * th)};
}

}  // namespace

Jet CubicPoly::jet(double x) const {
  const auto& k = coeffs;
  return {k[0] + x * (k[1] + x * (k[2] + x * k[3])), k[1] + x * (2.0 * k[2] + 3.0 * x * k[3]),
          2.0 * k[2] + 6.0 * x * k[3]};
}

CubicPoly base_polynomial(double theta_M, double rho0, double nu0) {
  if (!(theta_M > 0.0) || !std::isfinite(theta_M)) {
    throw DomainError("base_polynomial: theta_M must be positive");
  }
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
    throw DomainError("base_polynomial: rho0 must be positive");
  }
  if (!std::isfinite(nu0)) throw DomainError("base_polynomial: nu0 must be finite");
  const double y = std::log(rho0);
  const double L = theta_M;
  CubicPoly p;
  p.coeffs[2] = (3.0 * y - nu0 * L) / (L * L);
  p.coeffs[3] = (nu0 * L - 2.0 * y) / (L * L * L);
  return p;
}

Perturbation::Perturbation(PerturbationCoeffs h) : h_(std::move(h)) {
  for (double a : h_.a) {
    if (!std::isfinite(a)) throw DomainError("perturbation coefficients must be finite");
  }
  const int K = static_cast<int>(h_.a.size());
  if (K == 0) return;
  // The integrand is a polynomial of degree K + 4, so this rule is exact.
  const GaussRule rule = gauss_legendre(K / 2 + 4);
  std::vector<double> mass(static_cast<std::size_t>(K) + 1, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = 0.5 * (rule.nodes[i] + 1.0);
    const double w = x * x * (1.0 - x) * (1.0 - x);
    const auto T = chebyshev_table(K, 2.0 * x - 1.0);
    for (std::size_t k = 1; k <= static_cast<std::size_t>(K); ++k) {
      mass[k] += 0.5 * rule.weights[i] * w * T[k].t;
    }
  }
  mean_ratio_.resize(static_cast<std::size_t>(K));
  for (std::size_t k = 1; k <= static_cast<std::size_t>(K); ++k) {
    mean_ratio_[k - 1] = mass[k] / bump_mass;
  }
}

Jet Perturbation::jet(double x) const {
  const int K = static_cast<int>(h_.a.size());
  if (K == 0) return {};
  const double w = x * x * (1.0 - x) * (1.0 - x);
  const double w1 = 2.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
  const double w2 = 2.0 * (1.0 - 6.0 * x + 6.0 * x * x);
  const auto T = chebyshev_table(K, 2.0 * x - 1.0);
  Jet out;
  for (int k = 1; k <= K; ++k) {
    const auto& c = T[static_cast<std::size_t>(k)];
    const double a = h_.a[static_cast<std::size_t>(k) - 1];
    const double m = mean_ratio_[static_cast<std::size_t>(k) - 1];
    // d/dx T_k(2x - 1) = 2 T_k'(u)
    const double v = w * c.t;
    const double d1 = w1 * c.t + 2.0 * w * c.dt;
    const double d2 = w2 * c.t + 4.0 * w1 * c.dt + 4.0 * w * c.ddt;
    out.value += a * (v - m * w);
    out.d1 += a * (d1 - m * w1);
    out.d2 += a * (d2 - m * w2);
  }
  return out;
}

double normalize_c(double theta_M, const CubicPoly& p1, const Perturbation& r) {
  if (!(theta_M > 0.0) || !std::isfinite(theta_M)) {
    throw DomainError("normalize_c: theta_M must be positive");
  }
  const int n = normalize_panels + 1;
  const double h = theta_M / normalize_panels;
  std::vector<double> base(n), weight(n), simpson_w(n);
  for (int i = 0; i < n; ++i) {
    const double th = i + 1 == n ? theta_M : h * i;
    base[i] = p1.jet(th).value + r.jet(th / theta_M).value;
    weight[i] = area_weight(theta_M, th).value;
    simpson_w[i] = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
  }
  const double target = std::log(two_pi);

  // log of the Simpson integral and its c-derivative, shifted against overflow.
  const auto evaluate = [&](double c, double* slope) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) m = std::max(m, base[i] + c * weight[i]);
    if (!std::isfinite(m)) return m;
    double sum = 0.0, wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = simpson_w[i] * std::exp(base[i] + c * weight[i] - m);
      sum += e;
      wsum += e * weight[i];
    }
    if (slope) *slope = wsum / sum;
    return m + std::log(h / 3.0 * sum) - target;
  };

  const double f0 = evaluate(0.0, nullptr);
  if (!std::isfinite(f0)) throw NumericalError("normalize_c: integral is not finite at c = 0");
  if (std::abs(f0) <= normalize_rel_tol) return 0.0;

  // Exponential bracketing away from 0 in the direction that moves the integral to 2 pi.
  const double dir = f0 > 0.0 ? -1.0 : 1.0;
  double near = 0.0, f_near = f0, far = 0.0, f_far = f0;
  bool bracketed = false;
  for (int k = -30; k <= max_doublings; ++k) {
    const double c = dir * std::ldexp(1.0, k);
    const double fc = evaluate(c, nullptr);
    if (dir * (fc - f_far) < 0.0) {
      throw NumericalError("normalize_c: area is not monotone in c");
    }
    near = far;
    f_near = f_far;
    far = c;
    f_far = fc;
    if ((fc > 0.0) != (f0 > 0.0)) {
      bracketed = true;
      break;
    }
  }
  if (!bracketed) throw NumericalError("normalize_c: bracketing failed after 200 doublings");

  double lo = std::min(near, far), hi = std::max(near, far);
  double f_lo = near < far ? f_near : f_far;
  double f_hi = near < far ? f_far : f_near;
  if (!std::isfinite(f_hi)) f_hi = std::numeric_limits<double>::max();
  double c = lo - f_lo * (hi - lo) / (f_hi - f_lo);
  if (!(c > lo && c < hi)) c = 0.5 * (lo + hi);
  for (int iter = 0; iter < max_refinements; ++iter) {
    double slope = 0.0;
    const double fc = evaluate(c, &slope);
    if (std::abs(fc) <= normalize_rel_tol) return c;
    if (fc < 0.0) {
      lo = c;
      f_lo = fc;
    } else {
      hi = c;
      f_hi = fc;
    }
    if (!(f_lo < f_hi)) throw NumericalError("normalize_c: area is not monotone in c");
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
      return c;
    }
    double next = slope > 0.0 ? c - fc / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    c = next;
  }
  throw NumericalError("normalize_c: no convergence");
}

SynthesizedOrbit::SynthesizedOrbit(double theta_M, double rho0, double nu0, PerturbationCoeffs h)
    : theta_M_(theta_M), p1_(base_polynomial(theta_M, rho0, nu0)), r_(std::move(h)) {
  c_ = normalize_c(theta_M_, p1_, r_);
}

Jet SynthesizedOrbit::log_rho(double theta) const {
  const double L = theta_M_;
  const Jet p = p1_.jet(theta);
  const Jet r = r_.jet(theta / L);
  const Jet w = area_weight(L, theta);
  return {p.value + r.value + c_ * w.value, p.d1 + r.d1 / L + c_ * w.d1,
          p.d2 + r.d2 / (L * L) + c_ * w.d2};
}

OrbitProfile SynthesizedOrbit::profile() const {
  auto self = std::make_shared<const SynthesizedOrbit>(*this);
  return OrbitProfile(theta_M_, [self](double theta) { return self->log_rho(theta); });
}

Orbit SynthesizedOrbit::sample(int n) const {
  if (n < 5) throw DomainError("SynthesizedOrbit::sample: need at least 5 points");
  Orbit orbit;
  orbit.theta_max = theta_M_;
  orbit.rho.resize(static_cast<std::size_t>(n));
  orbit.rho_prime.resize(static_cast<std::size_t>(n));
  orbit.rho_second.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double th = i + 1 == n ? theta_M_ : theta_M_ * i / (n - 1);
    const Jet e = log_rho(th);
    const double rho = std::exp(e.value);
    const auto k = static_cast<std::size_t>(i);
    orbit.rho[k] = rho;
    orbit.rho_prime[k] = e.d1 * rho;
    orbit.rho_second[k] = (e.d2 + e.d1 * e.d1) * rho;
  }
  return orbit;
}

Potential psi(const CoverElement& g, const PerturbationCoeffs& h, int steps, int p) {
  if (p != 0) throw DomainError("psi: only the continuous case (p = 0) is supported");
  if (!in_G_theta(g, 0.0)) throw DomainError("psi: target is not in G0 (omega must be negative)");
  const IwasawaCoords coords = to_right_iwasawa(g);
  if (!(coords.theta > 0.0)) throw DomainError("psi: target has nonpositive right Iwasawa angle");
  const SynthesizedOrbit orbit(coords.theta, coords.rho, coords.nu, h);
  return potential_of_profile(orbit.profile(), steps);
}

}  // namespace hillmono
