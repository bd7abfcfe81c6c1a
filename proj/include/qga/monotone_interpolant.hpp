#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qga/interval.hpp"

namespace qga {

enum class Direction { increasing, decreasing };

/// What happens when a MonotoneInterpolant is evaluated outside its node range.
enum class Extension {
  error,                  ///< throw DomainError
  clamp,                  ///< return the end value
  asymptotic_linear_log,  ///< continue the end segment as a straight line in (log|x|, log|y|)
};

std::string_view to_string(Direction d);
std::string_view to_string(Extension e);
Direction direction_from_string(std::string_view s);
Extension extension_from_string(std::string_view s);

/// Strictly monotone sampled function, piecewise-linear between nodes.
///
/// Piecewise-linear interpolation keeps strict monotonicity between nodes, so
/// cone inequalities that hold at the nodes hold everywhere in between.
class MonotoneInterpolant {
 public:
  MonotoneInterpolant(std::vector<double> nodes, std::vector<double> values, Direction direction,
                      Extension extension = Extension::error);

  double operator()(double x) const;

  /// Exact inverse of the piecewise-linear interpolant for y inside the value range.
  double inverse(double y) const;

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> values() const { return values_; }
  Direction direction() const { return direction_; }
  Extension extension() const { return extension_; }

  /// Node range under Extension::error; wider for the other policies.
  Interval domain() const;

 private:
  double extrapolate(double x) const;

  std::vector<double> nodes_;
  std::vector<double> values_;
  Direction direction_;
  Extension extension_;
};

}  // namespace qga
