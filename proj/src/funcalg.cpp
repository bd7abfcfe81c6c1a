#include "qga/funcalg.hpp"

#include <algorithm>
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

}  // namespace

RealFunction conjugate_neg(const RealFunction& g) {
  using RF = RealFunction;
  const Interval dom = g.domain().reflected();
  return std::visit(overloaded{
                        [&](const RF::ConjugateNeg& b) { return b.of->restricted(dom); },
                        [&](const RF::Linear& b) { return RF::linear(b.slope, dom); },
                        [&](const RF::TwoSlope& b) { return RF::two_slope(b.slope_pos, b.slope_neg).restricted(dom); },
                        [&](const RF::Piecewise& b) {
                          return RF::piecewise(conjugate_neg(*b.pos), conjugate_neg(*b.neg), -b.at_zero).restricted(dom);
                        },
                        [&](const RF::Displacement& b) { return displacement(conjugate_neg(*b.of)).restricted(dom); },
                        [&](const auto&) {
                          return RF::make(RF::ConjugateNeg{std::make_shared<const RF>(g)}, dom);
                        },
                    },
                    g.body());
}

RealFunction displacement(const RealFunction& g) {
  using RF = RealFunction;
  const Interval dom = g.domain();
  return std::visit(overloaded{
                        [&](const RF::Displacement& b) { return b.of->restricted(dom); },
                        [&](const RF::Piecewise& b) {
                          return RF::piecewise(displacement(*b.neg), displacement(*b.pos), 0.0 - b.at_zero)
                              .restricted(dom);
                        },
                        [&](const auto&) { return RF::make(RF::Displacement{std::make_shared<const RF>(g)}, dom); },
                    },
                    g.body());
}

RealFunction compose(const RealFunction& g, const RealFunction& h) { return RealFunction::composite(g, h); }

RealFunction restrict_neg(const RealFunction& f) {
  using RF = RealFunction;
  const Interval neg = Interval::nonpositive();
  return std::visit(overloaded{
                        [&](const RF::Piecewise& b) { return b.neg->restricted(neg); },
                        [&](const RF::TwoSlope& b) { return RF::linear(b.slope_neg, neg); },
                        [&](const RF::ConjugateNeg& b) { return conjugate_neg(restrict_pos(*b.of)).restricted(f.domain()); },
                        [&](const RF::Displacement& b) { return displacement(restrict_neg(*b.of)).restricted(f.domain()); },
                        [&](const auto&) { return f.restricted(neg); },
                    },
                    f.body());
}

RealFunction restrict_pos(const RealFunction& f) {
  using RF = RealFunction;
  const Interval pos = Interval::nonnegative();
  return std::visit(overloaded{
                        [&](const RF::Piecewise& b) { return b.pos->restricted(pos); },
                        [&](const RF::TwoSlope& b) { return RF::linear(b.slope_pos, pos); },
                        [&](const RF::ConjugateNeg& b) { return conjugate_neg(restrict_neg(*b.of)).restricted(f.domain()); },
                        [&](const RF::Displacement& b) { return displacement(restrict_pos(*b.of)).restricted(f.domain()); },
                        [&](const auto&) { return f.restricted(pos); },
                    },
                    f.body());
}

double inverse_evaluate(const RealFunction& f, double y, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw BracketError("inverse_evaluate: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == y) return lo;
  if (fhi == y) return hi;
  const bool increasing = fhi > flo;
  if (!((flo < y && y < fhi) || (fhi < y && y < flo))) {
    std::ostringstream os;
    os.precision(17);
    os << "inverse_evaluate: y=" << y << " not bracketed by f(" << lo << ")=" << flo << ", f(" << hi << ")=" << fhi;
    throw BracketError(os.str());
  }
  const double y_tol = tol * std::max(1.0, std::abs(y));
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return std::abs(flo - y) <= std::abs(fhi - y) ? lo : hi;
    const double fm = f(mid);
    if (increasing ? !(flo <= fm && fm <= fhi) : !(fhi <= fm && fm <= flo)) {
      throw ValidationError("inverse_evaluate: non-monotone samples detected");
    }
    if (fm == y) return mid;
    if (hi - lo < tol && std::abs(fm - y) <= y_tol) return mid;
    if ((fm < y) == increasing) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
}

double inverse_evaluate(const RealFunction& f, double y, double lo, double hi) {
  return inverse_evaluate(f, y, lo, hi, f.has_sampled_body() ? kInverseTolSampled : kInverseTolClosedForm);
}

ResidualReport commutator_residual(const RealFunction& g, const RealFunction& h, const Grid& grid,
                                   const ScanOptions& options) {
  return scan_residual(grid, [&](double x) { return g(h(x)) - h(g(x)); }, options);
}

Interval to_interval(HalfLine line) {
  switch (line) {
    case HalfLine::nonpositive: return Interval::nonpositive();
    case HalfLine::nonnegative: return Interval::nonnegative();
    case HalfLine::reals: return Interval::reals();
  }
  return Interval::reals();
}

HalfLine reflect(HalfLine line) {
  switch (line) {
    case HalfLine::nonpositive: return HalfLine::nonnegative;
    case HalfLine::nonnegative: return HalfLine::nonpositive;
    case HalfLine::reals: return HalfLine::reals;
  }
  return HalfLine::reals;
}

ConeReport cone_check(const RealFunction& g, HalfLine line, const Grid& grid, bool strict) {
  if (!grid.within(to_interval(line))) throw ValidationError("cone_check: grid leaves the requested half-line");
  ConeReport report;
  for (double x : grid.points()) {
    if (x == 0.0) continue;
    const double gx = g(x);
    const double first = x * gx;
    const double second = x * (x - gx);
    const bool member_here = first >= 0.0 && second >= 0.0;
    const bool strict_here = first > 0.0 && second > 0.0;
    if (!report.first_violation && (strict ? !strict_here : !member_here)) {
      const bool first_fails = strict ? !(first > 0.0) : !(first >= 0.0);
      report.first_violation = ConeViolation{x, first_fails ? 1 : 2, first_fails ? first : second};
    }
    report.member = report.member && member_here;
    report.strict = report.strict && strict_here;
  }
  if (!report.member) report.strict = false;
  return report;
}

}  // namespace qga
