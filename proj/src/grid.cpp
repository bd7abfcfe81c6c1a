#include "qga/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qga/error.hpp"

namespace qga {

std::string Interval::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
  return os.str();
}

Grid::Grid(std::vector<double> points, std::string description)
    : points_(std::move(points)), description_(std::move(description)) {
  if (points_.empty()) throw ValidationError("grid: no points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw ValidationError("grid: non-finite point");
    if (i > 0 && !(points_[i] > points_[i - 1])) throw ValidationError("grid: points must be strictly increasing");
  }
}

Grid Grid::log_spaced(double min, double max, std::size_t n) {
  if (!(min > 0.0) || !(max >= min) || n == 0) throw ValidationError("log grid: need 0 < min <= max and n >= 1");
  if (n == 1 || min == max) return Grid({min}, "log[" + std::to_string(min) + "," + std::to_string(min) + "]x1");
  std::vector<double> pts(n);
  const double lmin = std::log(min);
  const double lmax = std::log(max);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  pts.front() = min;
  pts.back() = max;
  std::ostringstream d;
  d.precision(17);
  d << "log[" << min << "," << max << "]x" << n;
  return Grid(std::move(pts), d.str());
}

Grid Grid::linear(double min, double max, std::size_t n) {
  if (!(max >= min) || n == 0) throw ValidationError("linear grid: need min <= max and n >= 1");
  if (n == 1 || min == max) return Grid({min}, "linear[" + std::to_string(min) + "]x1");
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  pts.back() = max;
  std::ostringstream d;
  d.precision(17);
  d << "linear[" << min << "," << max << "]x" << n;
  return Grid(std::move(pts), d.str());
}

Grid Grid::explicit_points(std::vector<double> points) {
  std::ostringstream d;
  d << "explicit x" << points.size();
  return Grid(std::move(points), d.str());
}

Grid Grid::symmetric(const Grid& positive) {
  if (!(positive.front() > 0.0)) throw ValidationError("symmetric grid: base grid must be positive");
  std::vector<double> pts;
  pts.reserve(2 * positive.size() + 1);
  for (auto it = positive.points_.rbegin(); it != positive.points_.rend(); ++it) pts.push_back(-*it);
  pts.push_back(0.0);
  pts.insert(pts.end(), positive.points_.begin(), positive.points_.end());
  return Grid(std::move(pts), "symmetric(" + positive.description_ + ")");
}

Grid Grid::reflected() const {
  std::vector<double> pts(points_.size());
  std::transform(points_.rbegin(), points_.rend(), pts.begin(), [](double x) { return -x; });
  return Grid(std::move(pts), "reflected(" + description_ + ")");
}

bool Grid::within(const Interval& domain) const {
  return std::all_of(points_.begin(), points_.end(), [&](double x) { return domain.contains(x); });
}

Grid default_positive_grid() { return Grid::log_spaced(kWorkingMin, kWorkingMax, kWorkingPoints); }

Grid default_negative_grid() {
  auto neg = default_positive_grid().reflected();
  std::vector<double> pts(neg.points().begin(), neg.points().end());
  pts.push_back(0.0);
  return Grid(std::move(pts), "reflected(" + default_positive_grid().description() + ")+{0}");
}

Grid default_full_grid() { return Grid::symmetric(default_positive_grid()); }

}  // namespace qga
