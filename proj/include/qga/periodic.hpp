#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qga {

/// Map R -> R periodic with a fixed period.
///
/// Either constant + finite trigonometric series in 2πk·u/period, or a table of
/// samples over one period with wrap-around linear interpolation. Arguments are
/// reduced into [0, period) before evaluation.
class PeriodicFunction {
 public:
  static PeriodicFunction constant(double period, double value);
  static PeriodicFunction trigonometric(double period, double constant, std::vector<double> cos_coeffs,
                                        std::vector<double> sin_coeffs);
  /// samples[i] is the value at i·period/N.
  static PeriodicFunction sampled(double period, std::vector<double> samples);

  double operator()(double u) const;

  double period() const { return period_; }
  bool is_sampled() const { return sampled_; }
  double constant_term() const { return constant_; }
  std::span<const double> cos_coeffs() const { return cos_; }
  std::span<const double> sin_coeffs() const { return sin_; }
  std::span<const double> samples() const { return samples_; }

  /// Σ 2πk/T·(|a_k| + |b_k|) for series; max slope between samples for tables.
  double lipschitz_bound() const;

 private:
  PeriodicFunction() = default;
  double reduce(double u) const;

  double period_ = 1.0;
  bool sampled_ = false;
  double constant_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
  std::vector<double> samples_;
};

struct PositivityCertificate {
  double sampled_min;  ///< minimum over the sample set
  double lipschitz;    ///< max |ΔP|/Δu between consecutive samples
  double lower_bound;  ///< sampled_min - lipschitz·h/2
  std::size_t samples;
  bool positive() const { return lower_bound > 0.0; }
};

inline constexpr std::size_t kPositivitySamples = 4096;

/// Minimum over `samples` equispaced points, padded by the sampled Lipschitz bound.
PositivityCertificate certify_positive(const PeriodicFunction& p, std::size_t samples = kPositivitySamples);

}  // namespace qga
