#include "qga/solutions.hpp"

#include <cmath>
#include <sstream>

#include "qga/error.hpp"

namespace qga {

namespace {

std::string violation_text(const ConeReport& r) {
  if (!r.first_violation) return "no violation recorded";
  std::ostringstream os;
  os.precision(17);
  os << "inequality " << r.first_violation->inequality << " fails at x=" << r.first_violation->x
     << " (value " << r.first_violation->value << ")";
  return os.str();
}

// Evaluates one sub-expression of the residual, naming it on failure.
long double sub(const RealFunction& f, long double arg, const char* expr, double x) {
  try {
    return f.extended(arg);
  } catch (const DomainError& e) {
    std::ostringstream os;
    os.precision(17);
    os << "eq1 at x=" << x << ": " << expr << " escaped the domain (" << e.what() << ")";
    throw DomainError(os.str(), x);
  }
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::corollary1: return "corollary1";
    case Provenance::theorem2: return "theorem2";
    case Provenance::homogeneous: return "homogeneous";
    case Provenance::user: return "user";
    case Provenance::displacement_dual: return "displacement_dual";
    case Provenance::rotation_dual: return "rotation_dual";
  }
  return "user";
}

Generator check_generator(RealFunction branch, const Grid& grid) {
  Generator g{std::move(branch), {}, grid.description()};
  g.validation = cone_check(g.branch, HalfLine::nonpositive, grid, true);
  return g;
}

Generator make_generator(RealFunction branch, bool require_strict, const Grid& grid) {
  Generator g = check_generator(std::move(branch), grid);
  if (!g.validation.member) {
    throw ValidationError("generator " + g.branch.describe() + " is not in the cone on (-inf,0]: " +
                          violation_text(g.validation));
  }
  if (require_strict && !g.validation.strict) {
    throw ValidationError("generator " + g.branch.describe() + " is not strictly inside the cone: " +
                          violation_text(g.validation));
  }
  return g;
}

CandidateSolution make_candidate(RealFunction f, Provenance provenance, const Grid& grid) {
  CandidateSolution c{f, provenance, check_generator(restrict_neg(f)), {}, {}};
  c.cone = cone_check(f, HalfLine::reals, grid, true);
  if (!c.cone.member) c.warnings.push_back("candidate leaves the cone: " + violation_text(c.cone));
  return c;
}

double solve_tolerance(const RealFunction& f) {
  return f.has_sampled_body() ? kSolveTolSampled : kSolveTolClosedForm;
}

double eq1_pointwise(const RealFunction& f, double x) {
  const long double xl = x;
  const long double f_negx = sub(f, -xl, "f(-x)", x);
  const long double lhs = sub(f, f_negx + xl, "f(f(-x)+x)", x);
  const long double fx = sub(f, xl, "f(x)", x);
  const long double rhs_inner = sub(f, -fx, "f(-f(x))", x);
  return static_cast<double>(lhs - (rhs_inner + fx));
}

ResidualReport eq1_residual(const RealFunction& f, const Grid& grid, const ScanOptions& options) {
  return scan_residual(grid, [&f](double x) { return eq1_pointwise(f, x); }, options);
}

LemmaResiduals lemma_residuals(const CandidateSolution& c, const Grid& grid, const ScanOptions& options) {
  if (!grid.within(Interval::nonnegative())) throw ValidationError("lemma_residuals: grid must lie in [0, inf)");
  const RealFunction u = conjugate_neg(restrict_neg(c.f));
  const RealFunction f_pos = restrict_pos(c.f);
  return {commutator_residual(displacement(u), f_pos, grid, options),
          commutator_residual(u, displacement(f_pos), grid, options)};
}

CandidateSolution corollary1_extend(const Generator& phi) {
  if (!phi.validation.member) {
    throw ValidationError("corollary1_extend: generator is not in the cone: " + violation_text(phi.validation));
  }
  const RealFunction pos = displacement(conjugate_neg(phi.branch));
  CandidateSolution c{RealFunction::piecewise(phi.branch, pos), Provenance::corollary1, phi, {}, {}};
  if (!phi.strict()) {
    c.warnings.push_back("generator is not strictly inside the cone (" + violation_text(phi.validation) +
                         "); extension evaluated anyway");
  }
  c.cone = cone_check(c.f, HalfLine::reals, default_full_grid(), true);
  if (!c.cone.member) c.warnings.push_back("extension leaves the cone: " + violation_text(c.cone));
  return c;
}

CandidateSolution displacement_dual(const CandidateSolution& f) {
  return make_candidate(displacement(f.f), Provenance::displacement_dual);
}

CandidateSolution rotate_dual(const CandidateSolution& f) {
  return make_candidate(conjugate_neg(f.f), Provenance::rotation_dual);
}

CandidateSolution homogeneous_solution(double a, double b) {
  if (!(a > 0.0 && a < 1.0) || !(b > 0.0 && b < 1.0)) {
    throw ValidationError("homogeneous_solution: slopes must lie in (0, 1)");
  }
  return make_candidate(RealFunction::two_slope(a, b), Provenance::homogeneous);
}

}  // namespace qga
