#pragma once

// Hand-rolled seeded generators for property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qga/periodic.hpp"
#include "qga/real_function.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Strictly increasing interpolant on [-1e6, 0] with φ(x)/x in [smin, smax]
/// at every node (hence between nodes), value 0 at 0. Consecutive node slopes
/// differ by at most the factor `ratio`.
inline qga::RealFunction cone_interpolant_neg(Rng& rng, std::size_t nodes = 64, double smin = 0.1, double smax = 0.9,
                                              double ratio = 1.4) {
  std::vector<double> xs;
  std::vector<double> ys;
  const double lmin = std::log(1e-6);
  const double lmax = std::log(1e6);
  double slope = rng.uniform(smin, smax);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(nodes - 1);
    double x = -std::exp(lmax + t * (lmin - lmax));
    if (i == 0) x = -1e6;
    if (i + 1 == nodes) x = -1e-6;
    xs.push_back(x);
    ys.push_back(slope * x);
    slope = rng.uniform(std::max(smin, slope / ratio), std::min(smax, slope * ratio));
  }
  xs.push_back(0.0);
  ys.push_back(0.0);
  return qga::RealFunction::interpolant(
      qga::MonotoneInterpolant(std::move(xs), std::move(ys), qga::Direction::increasing));
}

/// Strictly monotone interpolant on [lo, hi] with random positive increments.
inline qga::MonotoneInterpolant monotone_interpolant(Rng& rng, double lo, double hi, std::size_t nodes,
                                                     qga::Direction dir) {
  std::vector<double> xs(nodes);
  std::vector<double> ys(nodes);
  double y = rng.uniform(-5.0, 5.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nodes - 1);
    ys[i] = y;
    y += (dir == qga::Direction::increasing ? 1.0 : -1.0) * rng.uniform(0.01, 2.0);
  }
  return qga::MonotoneInterpolant(std::move(xs), std::move(ys), dir);
}

/// Constant 1 plus up to three harmonics with Σ|c| <= 0.6, so P >= 0.4.
inline qga::PeriodicFunction positive_periodic(Rng& rng, double period = 1.0) {
  const int harmonics = rng.integer(1, 3);
  std::vector<double> c(static_cast<std::size_t>(harmonics));
  std::vector<double> s(static_cast<std::size_t>(harmonics));
  double total = 0.0;
  for (int k = 0; k < harmonics; ++k) {
    c[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
    s[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
    total += std::abs(c[static_cast<std::size_t>(k)]) + std::abs(s[static_cast<std::size_t>(k)]);
  }
  const double scale = rng.uniform(0.05, 0.6) / total;
  for (auto& v : c) v *= scale;
  for (auto& v : s) v *= scale;
  return qga::PeriodicFunction::trigonometric(period, period, std::move(c), std::move(s));
}

/// x·(slope + amplitude·sin(frequency·ln x + phase)) on (0, inf), strictly
/// increasing and inside the cone: slope ± amplitude·(1 + frequency) in (0, 1).
inline qga::RealFunction perturbed_positive(Rng& rng, double max_amplitude = 0.08) {
  const double slope = rng.uniform(0.3, 0.7);
  const double frequency = rng.uniform(0.5, 2.0);
  const double amplitude = rng.uniform(0.2, 1.0) * max_amplitude;
  const double phase = rng.uniform(0.0, 6.283185307179586);
  return qga::RealFunction::log_sine(slope, amplitude, frequency, phase, qga::Interval::positive());
}

}  // namespace gen
