#pragma once

#include <limits>
#include <string>

namespace qga {

/// Real interval with independently open/closed endpoints; endpoints may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval reals() { return {}; }
  /// (-inf, 0]
  static Interval nonpositive() { return {-inf(), 0.0, false, true}; }
  /// [0, inf)
  static Interval nonnegative() { return {0.0, inf(), true, false}; }
  /// (0, inf), the half-line X on which Abel conjugacies live.
  static Interval positive() { return {0.0, inf(), false, false}; }
  static Interval closed(double a, double b) { return {a, b, true, true}; }

  bool contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }

  bool contains(const Interval& other) const {
    const bool lo_ok = other.lo > lo || (other.lo == lo && (lo_closed || !other.lo_closed));
    const bool hi_ok = other.hi < hi || (other.hi == hi && (hi_closed || !other.hi_closed));
    return lo_ok && hi_ok;
  }

  /// Image under x -> -x.
  Interval reflected() const { return {-hi, -lo, hi_closed, lo_closed}; }

  Interval intersect(const Interval& other) const {
    Interval r;
    if (lo > other.lo) {
      r.lo = lo;
      r.lo_closed = lo_closed;
    } else if (other.lo > lo) {
      r.lo = other.lo;
      r.lo_closed = other.lo_closed;
    } else {
      r.lo = lo;
      r.lo_closed = lo_closed && other.lo_closed;
    }
    if (hi < other.hi) {
      r.hi = hi;
      r.hi_closed = hi_closed;
    } else if (other.hi < hi) {
      r.hi = other.hi;
      r.hi_closed = other.hi_closed;
    } else {
      r.hi = hi;
      r.hi_closed = hi_closed && other.hi_closed;
    }
    return r;
  }

  bool operator==(const Interval&) const = default;

  std::string to_string() const;

 private:
  static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
};

}  // namespace qga
