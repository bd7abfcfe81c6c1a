#include "qga/verify.hpp"

#include <cmath>
#include <sstream>

#include "qga/error.hpp"

namespace qga {

namespace {

std::string at_x(double x) {
  std::ostringstream os;
  os.precision(17);
  os << " at x=" << x;
  return os.str();
}

}  // namespace

DecompositionPair::DecompositionPair(RealFunction r1, RealFunction r2, const Grid& grid, double tol)
    : r1_(std::move(r1)), r2_(std::move(r2)) {
  for (double x : grid.points()) {
    if (!(x > 0.0)) throw ValidationError("decomposition pair: grid leaves (0, inf)");
    const double a = r1_(x);
    const double b = r2_(x);
    if (!(a > 0.0 && a < x)) throw ValidationError("decomposition pair: r1 leaves (0, x)" + at_x(x));
    if (!(b > 0.0 && b < x)) throw ValidationError("decomposition pair: r2 leaves (0, x)" + at_x(x));
    if (!(std::abs(a + b - x) <= tol * std::max(1.0, x))) {
      throw ValidationError("decomposition pair: r1 + r2 != id" + at_x(x));
    }
  }
}

DecompositionPair DecompositionPair::complement(RealFunction r1, const Grid& grid, double tol) {
  RealFunction r2 = displacement(r1);
  return DecompositionPair(std::move(r1), std::move(r2), grid, tol);
}

ResidualReport sablik_residual(const RealFunction& f, const DecompositionPair& pair, const Grid& grid,
                               const ScanOptions& options) {
  return scan_residual(
      grid, [&](double x) { return f(x) - f(pair.r1()(x)) - f(pair.r2()(x)); }, options);
}

LimitEvidence sablik_limit_evidence(const RealFunction& f, double slack) {
  LimitEvidence e;
  e.slack = slack;
  for (std::size_t i = 0; i < e.at.size(); ++i) e.ratios[i] = f(e.at[i]) / e.at[i];
  e.consistent = true;
  for (std::size_t i = 1; i < e.ratios.size(); ++i) {
    if (!(std::abs(e.ratios[i] - e.ratios[i - 1]) <= slack * std::max(1.0, std::abs(e.ratios[i])))) {
      e.consistent = false;
    }
  }
  return e;
}

ResidualReport theorem1_decomposition(const Generator& psi, const CandidateSolution& f0, const Grid& grid,
                                      const ScanOptions& options) {
  if (!grid.within(Interval::positive())) throw ValidationError("theorem1_decomposition: grid must lie in (0, inf)");
  const RealFunction u = conjugate_neg(restrict_neg(psi.branch));
  const RealFunction& f = f0.f;
  return scan_residual(
      grid,
      [&](double x) {
        const double fx = f(x);
        const double rest = x - fx;
        if (!(fx > 0.0)) throw DomainError("theorem1_decomposition: f0(x) leaves (0, inf)", x);
        if (!(rest > 0.0)) throw DomainError("theorem1_decomposition: x - f0(x) leaves (0, inf)", x);
        return u(x) - u(rest) - u(fx);
      },
      options);
}

Grid homogeneity_default_grid() { return Grid::log_spaced(1e-3, 1e3, 256); }

HomogeneityEstimate infer_homogeneity(const Generator& psi, const Grid& grid, double x_small,
                                      const ScanOptions& options) {
  if (!(x_small > 0.0)) throw DomainError("infer_homogeneity: x_small must be positive", x_small);
  const RealFunction u = conjugate_neg(restrict_neg(psi.branch));
  const double a = u(x_small) / x_small;
  return {a, scan_residual(
                 grid, [&](double x) { return u(x) - a * x; }, options)};
}

void require_cone_interior(const RealFunction& g, const Grid& grid, const char* who) {
  for (double x : grid.points()) {
    if (!(x > 0.0)) throw ValidationError(std::string(who) + ": grid leaves (0, inf)");
    const double gx = g(x);
    if (!(gx > 0.0)) throw ValidationError(std::string(who) + ": cone violation, g(x) <= 0" + at_x(x));
    if (!(gx < x)) throw ValidationError(std::string(who) + ": cone violation, g(x) >= x" + at_x(x));
  }
}

ResidualReport eq13_residual(const RealFunction& g, const Grid& grid, const ScanOptions& options) {
  require_cone_interior(g, grid, "eq13_residual");
  return scan_residual(
      grid,
      [&](double x) {
        const double gx = g(x);
        return gx - g(x - gx) - g(gx);
      },
      options);
}

EquivalenceReport proposition5_check(const RealFunction& g, const Grid& grid, double tol,
                                     const std::optional<AbelOptions>& witness, const ScanOptions& options) {
  EquivalenceReport r;
  r.eq13 = eq13_residual(g, grid, options);
  const RealFunction h = displacement(g);
  require_cone_interior(h, grid, "proposition5_check");
  r.commute = commutator_residual(g, h, grid, options);
  r.tol = tol;
  r.common_abel_plausible = r.commute.within(tol) && r.eq13.within(tol);
  r.grid = grid.description();
  if (witness) {
    const AbelConjugacy c = solve_abel(g, *witness);
    r.abel_witness = extract_periodic(h, c).periodicity.sup;
  }
  return r;
}

}  // namespace qga
