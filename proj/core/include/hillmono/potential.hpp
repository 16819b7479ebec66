#pragma once

// Real potentials q on [0, 2 pi]. A Potential is an immutable value with shared
// storage, cheap to copy and safe to read from several threads.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace hillmono {

enum class PotentialKind : std::uint8_t { constant, trig_poly, sampled, function };
enum class Interpolation : std::uint8_t { linear, cubic };

inline constexpr int min_sample_count = 17;

struct TrigPoly {
  double constant_term = 0.0;
  std::vector<double> cos_coeffs;  // coefficient of cos(k t), k = 1, 2, ...
  std::vector<double> sin_coeffs;  // coefficient of sin(k t), k = 1, 2, ...
};

class Potential {
 public:
  // q == 0.
  Potential();

  static Potential constant(double c);
  static Potential trig_poly(TrigPoly coeffs);
  // Values on the uniform grid over [0, 2 pi] including both endpoints.
  static Potential sampled(std::vector<double> samples, Interpolation interp);
  // Arbitrary callable; `sample_count` fixes the sampled serialization.
  static Potential function(std::function<double(double)> f, int sample_count);

  double operator()(double t) const;

  PotentialKind kind() const;
  double constant_value() const;  // kind() == constant
  const TrigPoly& trig() const;   // kind() == trig_poly
  std::span<const double> samples() const;  // kind() == sampled
  Interpolation interpolation() const;      // kind() == sampled
  // Grid size used when this potential is written as samples.
  int sample_count() const;

  // Values at n >= 2 uniform nodes over [0, 2 pi] inclusive.
  std::vector<double> sample(int n) const;

 private:
  struct Impl;
  explicit Potential(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// a * p + b * r, keeping closed forms when both inputs have the same analytic kind.
Potential linear_combination(double a, const Potential& p, double b, const Potential& r);

}  // namespace hillmono
