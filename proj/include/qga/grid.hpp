#pragma once

#include <span>
#include <string>
#include <vector>

#include "qga/interval.hpp"

namespace qga {

/// Finite, strictly increasing set of sample abscissae.
class Grid {
 public:
  /// Validates: nonempty, finite, strictly increasing.
  Grid(std::vector<double> points, std::string description);

  static Grid log_spaced(double min, double max, std::size_t n);
  static Grid linear(double min, double max, std::size_t n);
  static Grid explicit_points(std::vector<double> points);
  /// -reverse(positive) ∪ {0} ∪ positive. `positive` must lie in (0, inf).
  static Grid symmetric(const Grid& positive);
  /// Image under x -> -x (order restored).
  Grid reflected() const;

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  const std::string& description() const { return description_; }

  bool within(const Interval& domain) const;

 private:
  std::vector<double> points_;
  std::string description_;
};

// Working-domain defaults for half-line functions.
inline constexpr double kWorkingMin = 1e-6;
inline constexpr double kWorkingMax = 1e6;
inline constexpr std::size_t kWorkingPoints = 2048;

/// Log-spaced [1e-6, 1e6], 2048 points.
Grid default_positive_grid();
/// Mirror of the default positive grid plus 0.
Grid default_negative_grid();
/// Symmetric full-line grid used for the full-line residual.
Grid default_full_grid();

}  // namespace qga
