#include "hillmono/potential.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hillmono/errors.hpp"
#include "hillmono/numerics.hpp"

namespace hillmono {

namespace {

constexpr int default_sample_count = 4097;

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite value");
  }
}

double eval_trig(const TrigPoly& p, double t) {
  double sum = p.constant_term;
  for (std::size_t k = 0; k < p.cos_coeffs.size(); ++k) {
    sum += p.cos_coeffs[k] * std::cos(static_cast<double>(k + 1) * t);
  }
  for (std::size_t k = 0; k < p.sin_coeffs.size(); ++k) {
    sum += p.sin_coeffs[k] * std::sin(static_cast<double>(k + 1) * t);
  }
  return sum;
}

}  // namespace

struct Potential::Impl {
  PotentialKind kind = PotentialKind::constant;
  double c = 0.0;
  TrigPoly trig;
  std::vector<double> samples;
  Interpolation interp = Interpolation::linear;
  HermiteCubic spline;
  std::function<double(double)> f;
  int count = default_sample_count;

  double eval(double t) const {
    switch (kind) {
      case PotentialKind::constant: return c;
      case PotentialKind::trig_poly: return eval_trig(trig, t);
      case PotentialKind::function: return f(t);
      case PotentialKind::sampled: break;
    }
    if (interp == Interpolation::cubic) return spline(std::clamp(t, 0.0, two_pi));
    const auto n = samples.size();
    const double h = two_pi / static_cast<double>(n - 1);
    const double x = std::clamp(t, 0.0, two_pi) / h;
    const auto i = std::min(static_cast<std::size_t>(x), n - 2);
    const double u = x - static_cast<double>(i);
    return (1.0 - u) * samples[i] + u * samples[i + 1];
  }
};

Potential::Potential() : Potential(constant(0.0)) {}

Potential::Potential(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Potential Potential::constant(double c) {
  if (!std::isfinite(c)) throw InputError("constant potential: non-finite value");
  auto impl = std::make_shared<Impl>();
  impl->kind = PotentialKind::constant;
  impl->c = c;
  return Potential(std::move(impl));
}

Potential Potential::trig_poly(TrigPoly coeffs) {
  require_finite(std::span<const double>(&coeffs.constant_term, 1), "trig_poly");
  require_finite(coeffs.cos_coeffs, "trig_poly cos_coeffs");
  require_finite(coeffs.sin_coeffs, "trig_poly sin_coeffs");
  auto impl = std::make_shared<Impl>();
  impl->kind = PotentialKind::trig_poly;
  impl->trig = std::move(coeffs);
  return Potential(std::move(impl));
}

Potential Potential::sampled(std::vector<double> samples, Interpolation interp) {
  if (samples.size() < static_cast<std::size_t>(min_sample_count)) {
    throw InputError("sampled potential: need at least " + std::to_string(min_sample_count) +
                     " samples");
  }
  require_finite(samples, "sampled potential");
  auto impl = std::make_shared<Impl>();
  impl->kind = PotentialKind::sampled;
  impl->interp = interp;
  impl->count = static_cast<int>(samples.size());
  if (interp == Interpolation::cubic) {
    std::vector<double> grid(samples.size());
    const double h = two_pi / static_cast<double>(samples.size() - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = h * static_cast<double>(i);
    grid.back() = two_pi;
    impl->spline = HermiteCubic::not_a_knot(std::move(grid), samples);
  }
  impl->samples = std::move(samples);
  return Potential(std::move(impl));
}

Potential Potential::function(std::function<double(double)> f, int sample_count) {
  if (!f) throw DomainError("function potential: empty callable");
  if (sample_count < min_sample_count) {
    throw DomainError("function potential: sample_count below minimum");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = PotentialKind::function;
  impl->f = std::move(f);
  impl->count = sample_count;
  return Potential(std::move(impl));
}

double Potential::operator()(double t) const { return impl_->eval(t); }

PotentialKind Potential::kind() const { return impl_->kind; }

double Potential::constant_value() const { return impl_->c; }

const TrigPoly& Potential::trig() const { return impl_->trig; }

std::span<const double> Potential::samples() const { return impl_->samples; }

Interpolation Potential::interpolation() const { return impl_->interp; }

int Potential::sample_count() const { return impl_->count; }

std::vector<double> Potential::sample(int n) const {
  if (n < 2) throw DomainError("Potential::sample: need at least 2 nodes");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double h = two_pi / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = impl_->eval(h * i);
  out.back() = impl_->eval(two_pi);
  return out;
}

Potential linear_combination(double a, const Potential& p, double b, const Potential& r) {
  if (p.kind() == PotentialKind::constant && r.kind() == PotentialKind::constant) {
    return Potential::constant(a * p.constant_value() + b * r.constant_value());
  }
  const auto as_trig = [](const Potential& x) -> std::optional<TrigPoly> {
    if (x.kind() == PotentialKind::trig_poly) return x.trig();
    if (x.kind() == PotentialKind::constant) return TrigPoly{x.constant_value(), {}, {}};
    return std::nullopt;
  };
  const auto tp = as_trig(p), tr = as_trig(r);
  if (tp && tr) {
    TrigPoly out;
    out.constant_term = a * tp->constant_term + b * tr->constant_term;
    const auto mix = [&](const std::vector<double>& x, const std::vector<double>& y) {
      std::vector<double> z(std::max(x.size(), y.size()), 0.0);
      for (std::size_t k = 0; k < x.size(); ++k) z[k] += a * x[k];
      for (std::size_t k = 0; k < y.size(); ++k) z[k] += b * y[k];
      return z;
    };
    out.cos_coeffs = mix(tp->cos_coeffs, tr->cos_coeffs);
    out.sin_coeffs = mix(tp->sin_coeffs, tr->sin_coeffs);
    return Potential::trig_poly(std::move(out));
  }
  const int count = std::max(p.sample_count(), r.sample_count());
  return Potential::function([a, p, b, r](double t) { return a * p(t) + b * r(t); }, count);
}

}  // namespace hillmono
