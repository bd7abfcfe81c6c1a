#include "qga/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qga/error.hpp"

namespace qga {

namespace {

void check_period(double period) {
  if (!(period > 0.0) || !std::isfinite(period)) throw ValidationError("periodic function: period must be positive");
}

}  // namespace

PeriodicFunction PeriodicFunction::constant(double period, double value) {
  return trigonometric(period, value, {}, {});
}

PeriodicFunction PeriodicFunction::trigonometric(double period, double constant, std::vector<double> cos_coeffs,
                                                 std::vector<double> sin_coeffs) {
  check_period(period);
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::isfinite(constant) || !std::all_of(cos_coeffs.begin(), cos_coeffs.end(), finite) ||
      !std::all_of(sin_coeffs.begin(), sin_coeffs.end(), finite)) {
    throw ValidationError("periodic function: non-finite coefficient");
  }
  PeriodicFunction p;
  p.period_ = period;
  p.constant_ = constant;
  p.cos_ = std::move(cos_coeffs);
  p.sin_ = std::move(sin_coeffs);
  return p;
}

PeriodicFunction PeriodicFunction::sampled(double period, std::vector<double> samples) {
  check_period(period);
  if (samples.empty()) throw ValidationError("periodic function: no samples");
  if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); })) {
    throw ValidationError("periodic function: non-finite sample");
  }
  PeriodicFunction p;
  p.period_ = period;
  p.sampled_ = true;
  p.samples_ = std::move(samples);
  return p;
}

double PeriodicFunction::reduce(double u) const {
  double w = std::fmod(u, period_);
  if (w < 0.0) w += period_;
  if (w >= period_) w = 0.0;
  return w;
}

double PeriodicFunction::operator()(double u) const {
  if (!std::isfinite(u)) throw DomainError("periodic function: non-finite argument", u);
  const double w = reduce(u);
  if (sampled_) {
    const auto n = samples_.size();
    const double pos = w / period_ * static_cast<double>(n);
    auto i = static_cast<std::size_t>(pos);
    if (i >= n) i = n - 1;
    const double t = pos - static_cast<double>(i);
    const double a = samples_[i];
    const double b = samples_[(i + 1) % n];
    return a + t * (b - a);
  }
  const double theta = 2.0 * std::numbers::pi * w / period_;
  double v = constant_;
  for (std::size_t k = 0; k < cos_.size(); ++k) v += cos_[k] * std::cos(static_cast<double>(k + 1) * theta);
  for (std::size_t k = 0; k < sin_.size(); ++k) v += sin_[k] * std::sin(static_cast<double>(k + 1) * theta);
  return v;
}

double PeriodicFunction::lipschitz_bound() const {
  if (sampled_) {
    const auto n = samples_.size();
    const double h = period_ / static_cast<double>(n);
    double l = 0.0;
    for (std::size_t i = 0; i < n; ++i) l = std::max(l, std::abs(samples_[(i + 1) % n] - samples_[i]) / h);
    return l;
  }
  double l = 0.0;
  const double base = 2.0 * std::numbers::pi / period_;
  for (std::size_t k = 0; k < cos_.size(); ++k) l += base * static_cast<double>(k + 1) * std::abs(cos_[k]);
  for (std::size_t k = 0; k < sin_.size(); ++k) l += base * static_cast<double>(k + 1) * std::abs(sin_[k]);
  return l;
}

PositivityCertificate certify_positive(const PeriodicFunction& p, std::size_t samples) {
  if (samples < 2) throw ValidationError("certify_positive: need at least two samples");
  const double h = p.period() / static_cast<double>(samples);
  std::vector<double> v(samples);
  for (std::size_t i = 0; i < samples; ++i) v[i] = p(static_cast<double>(i) * h);
  double lip = 0.0;
  for (std::size_t i = 0; i < samples; ++i) lip = std::max(lip, std::abs(v[(i + 1) % samples] - v[i]) / h);
  const double mn = *std::min_element(v.begin(), v.end());
  return {mn, lip, mn - lip * h / 2.0, samples};
}

}  // namespace qga
