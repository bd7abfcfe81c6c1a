#include "qga/monotone_interpolant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qga/error.hpp"

namespace qga {

std::string_view to_string(Direction d) { return d == Direction::increasing ? "increasing" : "decreasing"; }

std::string_view to_string(Extension e) {
  switch (e) {
    case Extension::error: return "error";
    case Extension::clamp: return "clamp";
    case Extension::asymptotic_linear_log: return "asymptotic-linear-in-log";
  }
  return "error";
}

Direction direction_from_string(std::string_view s) {
  if (s == "increasing") return Direction::increasing;
  if (s == "decreasing") return Direction::decreasing;
  throw ValidationError("unknown direction: " + std::string(s));
}

Extension extension_from_string(std::string_view s) {
  if (s == "error") return Extension::error;
  if (s == "clamp") return Extension::clamp;
  if (s == "asymptotic-linear-in-log") return Extension::asymptotic_linear_log;
  throw ValidationError("unknown extension policy: " + std::string(s));
}

MonotoneInterpolant::MonotoneInterpolant(std::vector<double> nodes, std::vector<double> values,
                                         Direction direction, Extension extension)
    : nodes_(std::move(nodes)), values_(std::move(values)), direction_(direction), extension_(extension) {
  if (nodes_.size() != values_.size()) throw ValidationError("interpolant: nodes/values size mismatch");
  if (nodes_.size() < 2) throw ValidationError("interpolant: need at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(values_[i])) {
      throw ValidationError("interpolant: non-finite node or value");
    }
    if (i == 0) continue;
    if (!(nodes_[i] > nodes_[i - 1])) throw ValidationError("interpolant: nodes must be strictly increasing");
    const bool ok = direction_ == Direction::increasing ? values_[i] > values_[i - 1] : values_[i] < values_[i - 1];
    if (!ok) throw ValidationError("interpolant: values not strictly " + std::string(to_string(direction_)));
  }
  if (extension_ == Extension::asymptotic_linear_log) {
    auto same_sign_nonzero = [](double a, double b) { return a != 0.0 && b != 0.0 && (a > 0) == (b > 0); };
    const std::size_t n = nodes_.size();
    if (!same_sign_nonzero(nodes_[0], nodes_[1]) || !same_sign_nonzero(values_[0], values_[1]) ||
        !same_sign_nonzero(nodes_[n - 1], nodes_[n - 2]) || !same_sign_nonzero(values_[n - 1], values_[n - 2])) {
      throw ValidationError("interpolant: log-linear extension needs nonzero same-sign end segments");
    }
  }
}

Interval MonotoneInterpolant::domain() const {
  switch (extension_) {
    case Extension::error: return Interval::closed(nodes_.front(), nodes_.back());
    case Extension::clamp: return Interval::reals();
    case Extension::asymptotic_linear_log:
      return nodes_.front() > 0.0 ? Interval::positive() : Interval{-std::numeric_limits<double>::infinity(), 0.0, false, false};
  }
  return Interval::reals();
}

double MonotoneInterpolant::operator()(double x) const {
  if (x < nodes_.front() || x > nodes_.back()) return extrapolate(x);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  if (it == nodes_.end()) return values_.back();
  const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const double x0 = nodes_[i];
  const double x1 = nodes_[i + 1];
  const double t = (x - x0) / (x1 - x0);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

double MonotoneInterpolant::extrapolate(double x) const {
  switch (extension_) {
    case Extension::error:
      throw DomainError("interpolant evaluated outside node range", x);
    case Extension::clamp:
      return x < nodes_.front() ? values_.front() : values_.back();
    case Extension::asymptotic_linear_log: {
      const bool left = x < nodes_.front();
      const std::size_t a = left ? 0 : nodes_.size() - 1;
      const std::size_t b = left ? 1 : nodes_.size() - 2;
      if (x == 0.0 || (x > 0) != (nodes_[a] > 0)) throw DomainError("interpolant: log extension across 0", x);
      const double s = std::log(values_[b] / values_[a]) / std::log(nodes_[b] / nodes_[a]);
      return values_[a] * std::pow(x / nodes_[a], s);
    }
  }
  throw DomainError("interpolant: bad extension policy", x);
}

double MonotoneInterpolant::inverse(double y) const {
  const bool inc = direction_ == Direction::increasing;
  const double vmin = inc ? values_.front() : values_.back();
  const double vmax = inc ? values_.back() : values_.front();
  if (y < vmin || y > vmax) throw BracketError("interpolant inverse: value outside range");
  std::size_t lo = 0;
  std::size_t hi = values_.size() - 1;
  // invariant: y between values_[lo] and values_[hi]
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const bool below = inc ? values_[mid] <= y : values_[mid] >= y;
    (below ? lo : hi) = mid;
  }
  const double dv = values_[hi] - values_[lo];
  const double t = (y - values_[lo]) / dv;
  return nodes_[lo] + t * (nodes_[hi] - nodes_[lo]);
}

}  // namespace qga
