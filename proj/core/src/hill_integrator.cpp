#include "hillmono/hill_integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hillmono/errors.hpp"
#include "hillmono/numerics.hpp"

namespace hillmono {

namespace {

// Phi entries, row-major.
using State = std::array<double, 4>;

State rhs(const State& y, double q) { return {y[2], y[3], q * y[0], q * y[1]}; }

// Angles are accumulated from per-step argument increments of Phi itself, so
// they agree with the matrix exactly. theta' = 1 / |v|^2 spikes when the first
// row passes near the origin, which makes integrating it as an ODE unreliable;
// its increments are positive, so they are read in (-eps, 2 pi - eps].
// omega and the solution winding have bounded rates and move well under pi per step.
struct Angles {
  double theta = 0.0;
  double omega = 0.0;
  double winding = 0.0;
};

double positive_increment(double d) { return d < -1e-3 ? d + two_pi : d; }

State axpy(const State& y, double h, const State& k) {
  State out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

int steps_of(std::span<const double> half_samples) {
  const auto n = half_samples.size();
  if (n < 2 * static_cast<std::size_t>(min_steps) + 1 || n % 2 == 0) {
    throw DomainError("half-step samples must have 2 * steps + 1 entries with steps >= 16");
  }
  return static_cast<int>((n - 1) / 2);
}

Mat2 phi_of(const State& y) { return {y[0], y[1], y[2], y[3]}; }

// RK4 over [0, 2 pi]; records every node into `path` when given. `phi0` selects
// the solution Phi (cos phi0, sin phi0)^T whose winding is tracked.
Angles run(std::span<const double> q, double phi0, FundamentalPath* path, Mat2* final_phi) {
  const int steps = steps_of(q);
  const double h = two_pi / steps;
  const double c = std::cos(phi0), s = std::sin(phi0);
  State y{1.0, 0.0, 0.0, 1.0};
  Angles ang;
  auto row_arg = [](const State& z) { return std::atan2(z[1], z[0]); };
  auto col_arg = [](const State& z) { return std::atan2(z[3], z[1]); };
  auto sol_arg = [c, s](const State& z) {
    return std::atan2(z[2] * c + z[3] * s, z[0] * c + z[1] * s);
  };
  if (path) {
    path->t.reserve(steps + 1);
    path->phi.reserve(steps + 1);
    path->theta.reserve(steps + 1);
    path->omega.reserve(steps + 1);
    path->t.push_back(0.0);
    path->phi.push_back(phi_of(y));
    path->theta.push_back(0.0);
    path->omega.push_back(0.0);
  }
  for (int i = 0; i < steps; ++i) {
    const double q0 = q[2 * i], qm = q[2 * i + 1], q1 = q[2 * i + 2];
    const State k1 = rhs(y, q0);
    const State k2 = rhs(axpy(y, 0.5 * h, k1), qm);
    const State k3 = rhs(axpy(y, 0.5 * h, k2), qm);
    const State k4 = rhs(axpy(y, h, k3), q1);
    State next;
    for (std::size_t j = 0; j < y.size(); ++j) {
      next[j] = y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    ang.theta += positive_increment(wrap_angle(row_arg(next) - row_arg(y)));
    ang.omega += wrap_angle(col_arg(next) - col_arg(y));
    ang.winding += wrap_angle(sol_arg(next) - sol_arg(y));
    y = next;
    if (path) {
      path->t.push_back(i + 1 == steps ? two_pi : h * (i + 1));
      path->phi.push_back(phi_of(y));
      path->theta.push_back(ang.theta);
      path->omega.push_back(ang.omega);
    }
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw NumericalError("integration overflow");
  }
  if (final_phi) *final_phi = phi_of(y);
  return ang;
}

}  // namespace

std::vector<double> half_step_samples(const Potential& q, int steps) {
  if (steps < min_steps) throw DomainError("steps must be at least 16");
  const int n = 2 * steps + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  const double h = pi / steps;
  for (int i = 0; i < n; ++i) {
    const double t = i + 1 == n ? two_pi : h * i;
    const double v = q(t);
    if (!std::isfinite(v)) {
      throw InputError("potential is not finite at t = " + std::to_string(t));
    }
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

FundamentalPath integrate(const Potential& q, int steps) {
  FundamentalPath path;
  run(half_step_samples(q, steps), half_pi, &path, nullptr);
  return path;
}

Monodromy monodromy_from_samples(std::span<const double> half_samples) {
  Mat2 phi;
  const Angles ang = run(half_samples, half_pi, nullptr, &phi);
  Monodromy out{CoverElement(phi, ang.omega), ang.theta};
  const double theta_check = to_right_iwasawa(out.element).theta;
  if (std::abs(theta_check - out.theta_R) > 1e-6) {
    throw NumericalError("monodromy: integrated theta(2 pi) = " + std::to_string(out.theta_R) +
                         " disagrees with the right Iwasawa angle " +
                         std::to_string(theta_check) + "; increase steps");
  }
  return out;
}

Monodromy monodromy(const Potential& q, int steps) {
  return monodromy_from_samples(half_step_samples(q, steps));
}

int resolved_steps(const Potential& q, int base) {
  constexpr double max_phase_step = 0.05;
  double peak = 1.0;
  for (double v : half_step_samples(q, base)) peak = std::max(peak, std::abs(v));
  const double frequency = std::sqrt(peak);
  int steps = base;
  for (int k = 0; k < 6 && two_pi / steps * frequency > max_phase_step; ++k) steps *= 2;
  return steps;
}

double solution_winding_from_samples(std::span<const double> half_samples, double phi0) {
  return run(half_samples, phi0, nullptr, nullptr).winding;
}

double solution_winding(const Potential& q, double phi0, int steps) {
  return solution_winding_from_samples(half_step_samples(q, steps), phi0);
}

}  // namespace hillmono
