#include "qga/real_function.hpp"

#include <cmath>
#include <sstream>

#include "qga/error.hpp"

namespace qga {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

RealFunction RealFunction::make(Body body, Interval domain) {
  return RealFunction(std::make_shared<const Body>(std::move(body)), domain);
}

RealFunction RealFunction::identity(Interval domain) { return linear(1.0, domain); }

RealFunction RealFunction::linear(double slope, Interval domain) {
  if (!std::isfinite(slope)) throw ValidationError("linear: non-finite slope");
  return make(Linear{slope}, domain);
}

RealFunction RealFunction::two_slope(double slope_neg, double slope_pos) {
  if (!std::isfinite(slope_neg) || !std::isfinite(slope_pos)) throw ValidationError("two_slope: non-finite slope");
  return make(TwoSlope{slope_neg, slope_pos}, Interval::reals());
}

RealFunction RealFunction::rational_neg(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("rational_neg: k must be positive");
  return make(RationalNeg{k}, Interval::nonpositive());
}

RealFunction RealFunction::power(double coefficient, double exponent) {
  if (!std::isfinite(coefficient) || !std::isfinite(exponent)) throw ValidationError("power: non-finite parameter");
  return make(Power{coefficient, exponent}, Interval::positive());
}

RealFunction RealFunction::log_sine(double slope, double amplitude, double frequency, double phase,
                                    Interval domain) {
  if (!std::isfinite(slope) || !std::isfinite(amplitude) || !std::isfinite(frequency) || !std::isfinite(phase)) {
    throw ValidationError("log_sine: non-finite parameter");
  }
  return make(LogSine{slope, amplitude, frequency, phase}, domain);
}

RealFunction RealFunction::interpolant(MonotoneInterpolant interp) {
  const Interval dom = interp.domain();
  return make(Sampled{std::move(interp)}, dom);
}

RealFunction RealFunction::piecewise(RealFunction neg, RealFunction pos, std::optional<double> at_zero) {
  const Interval dom{neg.domain().lo, pos.domain().hi, neg.domain().lo_closed, pos.domain().hi_closed};
  double zero_value = 0.0;
  if (at_zero) {
    if (!std::isfinite(*at_zero)) throw ValidationError("piecewise: non-finite value at 0");
    zero_value = *at_zero;
  } else {
    const bool n0 = neg.domain().contains(0.0);
    const bool p0 = pos.domain().contains(0.0);
    if (n0 && p0) {
      const double vn = neg(0.0);
      const double vp = pos(0.0);
      if (std::abs(vn - vp) > 1e-12 * std::max(1.0, std::abs(vn))) {
        throw ValidationError("piecewise: pieces disagree at 0 (" + num(vn) + " vs " + num(vp) + ")");
      }
      zero_value = vn;
    } else if (n0) {
      zero_value = neg(0.0);
    } else if (p0) {
      zero_value = pos(0.0);
    }
  }
  return make(Piecewise{std::make_shared<const RealFunction>(std::move(neg)),
                        std::make_shared<const RealFunction>(std::move(pos)), zero_value},
              dom);
}

RealFunction RealFunction::composite(RealFunction outer, RealFunction inner) {
  const Interval dom = inner.domain();
  return make(Composite{std::make_shared<const RealFunction>(std::move(outer)),
                        std::make_shared<const RealFunction>(std::move(inner))},
              dom);
}

RealFunction RealFunction::opaque(std::string name, std::function<double(double)> fn, Interval domain,
                                  std::string spec_json) {
  if (!fn) throw ValidationError("opaque: empty callable");
  return make(Opaque{std::move(name), std::move(fn), std::move(spec_json)}, domain);
}

template <class T>
T RealFunction::evaluate(T x) const {
  const bool inside = !(x < domain_.lo || x > domain_.hi || (x == domain_.lo && !domain_.lo_closed) ||
                        (x == domain_.hi && !domain_.hi_closed) || x != x);
  if (!inside) {
    const auto xd = static_cast<double>(x);
    throw DomainError(describe() + " evaluated outside its domain " + domain_.to_string() + " at x=" + num(xd), xd);
  }
  const T y = eval_body(x);
  if (!std::isfinite(y)) {
    const auto xd = static_cast<double>(x);
    throw DomainError(describe() + " produced a non-finite value at x=" + num(xd), xd);
  }
  return y;
}

double RealFunction::operator()(double x) const { return evaluate(x); }

long double RealFunction::extended(long double x) const { return evaluate(x); }

template <class T>
T RealFunction::eval_body(T x) const {
  using std::abs;
  using std::log;
  using std::pow;
  using std::sin;
  const T zero = 0;
  return std::visit(
      overloaded{
          [x](const Linear& b) { return T(b.slope) * x; },
          [x, zero](const TwoSlope& b) { return x < zero ? T(b.slope_neg) * x : T(b.slope_pos) * x; },
          [x](const RationalNeg& b) { return x / (T(b.k) - x); },
          [x](const Power& b) { return T(b.coefficient) * pow(x, T(b.exponent)); },
          [x, zero](const LogSine& b) {
            if (x == zero) return zero;
            return x * (T(b.slope) + T(b.amplitude) * sin(T(b.frequency) * log(abs(x)) + T(b.phase)));
          },
          [x](const Sampled& b) { return T(b.interpolant(static_cast<double>(x))); },
          [x, zero](const Piecewise& b) {
            if (x < zero) return b.neg->evaluate(x);
            if (x > zero) return b.pos->evaluate(x);
            return T(b.at_zero);
          },
          [x](const Composite& b) { return b.outer->evaluate(b.inner->evaluate(x)); },
          [x](const ConjugateNeg& b) { return -b.of->evaluate(-x); },
          [x](const Displacement& b) { return x - b.of->evaluate(x); },
          [x](const Opaque& b) { return T(b.fn(static_cast<double>(x))); },
      },
      *body_);
}

std::string RealFunction::describe() const {
  return std::visit(
      overloaded{
          [](const Linear& b) { return "linear(" + num(b.slope) + ")"; },
          [](const TwoSlope& b) { return "two_slope(" + num(b.slope_neg) + "," + num(b.slope_pos) + ")"; },
          [](const RationalNeg& b) { return "rational_neg(" + num(b.k) + ")"; },
          [](const Power& b) { return "power(" + num(b.coefficient) + "," + num(b.exponent) + ")"; },
          [](const LogSine& b) { return "log_sine(" + num(b.slope) + "," + num(b.amplitude) + ")"; },
          [](const Sampled& b) { return "interpolant[" + std::to_string(b.interpolant.nodes().size()) + "]"; },
          [](const Piecewise& b) { return "piecewise(" + b.neg->describe() + "," + b.pos->describe() + ")"; },
          [](const Composite& b) { return "composite(" + b.outer->describe() + "," + b.inner->describe() + ")"; },
          [](const ConjugateNeg& b) { return "conjugate_neg(" + b.of->describe() + ")"; },
          [](const Displacement& b) { return "displacement(" + b.of->describe() + ")"; },
          [](const Opaque& b) { return b.name; },
      },
      *body_);
}

bool RealFunction::has_sampled_body() const {
  return std::visit(overloaded{
                        [](const Sampled&) { return true; },
                        [](const Piecewise& b) { return b.neg->has_sampled_body() || b.pos->has_sampled_body(); },
                        [](const Composite& b) { return b.outer->has_sampled_body() || b.inner->has_sampled_body(); },
                        [](const ConjugateNeg& b) { return b.of->has_sampled_body(); },
                        [](const Displacement& b) { return b.of->has_sampled_body(); },
                        [](const auto&) { return false; },
                    },
                    *body_);
}

RealFunction RealFunction::restricted(const Interval& domain) const {
  return RealFunction(body_, domain_.intersect(domain));
}

}  // namespace qga
