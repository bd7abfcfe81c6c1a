#pragma once

#include <optional>

#include "qga/grid.hpp"
#include "qga/real_function.hpp"
#include "qga/residual.hpp"

namespace qga {

/// x -> -g(-x) on the reflected domain.
///
/// Structural rewrites keep the result exact: double conjugation returns the
/// original body, linear and two-slope bodies map to themselves (slopes
/// swapped), and conjugation distributes over piecewise and displacement
/// bodies. Every rewrite agrees bit-for-bit with the unrewritten formula.
RealFunction conjugate_neg(const RealFunction& g);

/// x -> x - g(x). Double displacement returns the original body; displacement
/// distributes over piecewise bodies.
RealFunction displacement(const RealFunction& g);

/// (g ∘ h)(x) = g(h(x)) on the domain of h.
RealFunction compose(const RealFunction& g, const RealFunction& h);

/// Restriction to (-inf, 0]; returns the negative piece of piecewise bodies.
RealFunction restrict_neg(const RealFunction& f);
/// Restriction to [0, inf); returns the positive piece of piecewise bodies.
RealFunction restrict_pos(const RealFunction& f);

inline constexpr double kInverseTolClosedForm = 1e-12;
inline constexpr double kInverseTolSampled = 1e-9;

/// Midpoint bisection for f(x) = y on [lo, hi].
///
/// Terminates once the bracket is narrower than `tol` and the midpoint value
/// is within tol·max(1, |y|) of y, or when the bracket can no longer be split. Throws BracketError when y is not between f(lo) and f(hi),
/// ValidationError when a midpoint value falls outside the current bracket
/// values (non-monotone samples).
double inverse_evaluate(const RealFunction& f, double y, double lo, double hi, double tol);
/// Uses kInverseTolSampled when f is sample-backed, kInverseTolClosedForm otherwise.
double inverse_evaluate(const RealFunction& f, double y, double lo, double hi);

/// Pointwise g(h(x)) - h(g(x)).
ResidualReport commutator_residual(const RealFunction& g, const RealFunction& h, const Grid& grid,
                                   const ScanOptions& options = {});

enum class HalfLine { nonpositive, nonnegative, reals };

Interval to_interval(HalfLine line);
HalfLine reflect(HalfLine line);

struct ConeViolation {
  double x;
  int inequality;  ///< 1: x·g(x) >= 0, 2: x·(x - g(x)) >= 0
  double value;    ///< the offending product
};

struct ConeReport {
  bool member = true;
  bool strict = true;
  std::optional<ConeViolation> first_violation;
};

/// Bow-tie cone test: x·g(x) >= 0 and x·(x - g(x)) >= 0 at every grid point.
///
/// g is never evaluated at 0. With `strict` set, first_violation reports the
/// first point where either inequality is not strict; otherwise the first
/// point where either fails. Throws ValidationError if the grid leaves `line`.
ConeReport cone_check(const RealFunction& g, HalfLine line, const Grid& grid, bool strict);

}  // namespace qga
