#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "qga/interval.hpp"
#include "qga/monotone_interpolant.hpp"

namespace qga {

/// Evaluable real map on an interval.
///
/// Cheap to copy: the body is immutable and shared. Evaluation checks the
/// domain and rejects non-finite results, so a value returned by operator()
/// is always a finite number computed inside the declared domain.
class RealFunction {
 public:
  struct Linear {
    double slope;
  };
  /// a·x for x <= 0, b·x for x >= 0.
  struct TwoSlope {
    double slope_neg;
    double slope_pos;
  };
  /// x / (k - x), the canonical nonlinear generator on (-inf, 0] (k = 2).
  struct RationalNeg {
    double k;
  };
  /// c·x^p on (0, inf).
  struct Power {
    double coefficient;
    double exponent;
  };
  /// x·(slope + amplitude·sin(frequency·ln|x| + phase)), 0 at the origin.
  struct LogSine {
    double slope;
    double amplitude;
    double frequency;
    double phase;
  };
  struct Sampled {
    MonotoneInterpolant interpolant;
  };
  /// neg on x < 0, pos on x > 0, at_zero at 0.
  struct Piecewise {
    std::shared_ptr<const RealFunction> neg;
    std::shared_ptr<const RealFunction> pos;
    double at_zero;
  };
  struct Composite {
    std::shared_ptr<const RealFunction> outer;
    std::shared_ptr<const RealFunction> inner;
  };
  /// x -> -g(-x)
  struct ConjugateNeg {
    std::shared_ptr<const RealFunction> of;
  };
  /// x -> x - g(x)
  struct Displacement {
    std::shared_ptr<const RealFunction> of;
  };
  /// Arbitrary callable; `spec_json` is its serialized form when one exists.
  struct Opaque {
    std::string name;
    std::function<double(double)> fn;
    std::string spec_json;
  };

  using Body = std::variant<Linear, TwoSlope, RationalNeg, Power, LogSine, Sampled, Piecewise, Composite,
                            ConjugateNeg, Displacement, Opaque>;

  static RealFunction identity(Interval domain = Interval::reals());
  static RealFunction linear(double slope, Interval domain = Interval::reals());
  static RealFunction two_slope(double slope_neg, double slope_pos);
  static RealFunction rational_neg(double k = 2.0);
  static RealFunction power(double coefficient, double exponent);
  static RealFunction log_sine(double slope, double amplitude, double frequency, double phase = 0.0,
                               Interval domain = Interval::reals());
  static RealFunction interpolant(MonotoneInterpolant interp);
  /// If at_zero is empty the value at 0 is taken from whichever piece contains 0
  /// (both must agree when both do), and is 0 when neither does.
  static RealFunction piecewise(RealFunction neg, RealFunction pos, std::optional<double> at_zero = {});
  static RealFunction composite(RealFunction outer, RealFunction inner);
  static RealFunction opaque(std::string name, std::function<double(double)> fn, Interval domain,
                             std::string spec_json = {});

  double operator()(double x) const;
  /// Same evaluation carried out in extended precision. Sampled and opaque
  /// bodies are still evaluated in double.
  long double extended(long double x) const;

  const Interval& domain() const { return domain_; }
  const Body& body() const { return *body_; }
  std::string describe() const;

  /// True if any node of the expression tree is backed by samples.
  bool has_sampled_body() const;

  /// Same body, domain intersected with `domain`.
  RealFunction restricted(const Interval& domain) const;

 private:
  RealFunction(std::shared_ptr<const Body> body, Interval domain) : body_(std::move(body)), domain_(domain) {}
  static RealFunction make(Body body, Interval domain);

  template <class T>
  T evaluate(T x) const;
  template <class T>
  T eval_body(T x) const;

  friend RealFunction conjugate_neg(const RealFunction&);
  friend RealFunction displacement(const RealFunction&);

  std::shared_ptr<const Body> body_;
  Interval domain_;
};

}  // namespace qga
