#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qga/funcalg.hpp"

namespace qga {

/// Prescribed branch on (-inf, 0] together with its cone validation.
struct Generator {
  RealFunction branch;
  ConeReport validation;
  std::string validation_grid;

  bool strict() const { return validation.member && validation.strict; }
};

/// Validates `branch` on `grid` and returns the result without judging it.
Generator check_generator(RealFunction branch, const Grid& grid = default_negative_grid());
/// As check_generator, but throws ValidationError unless the branch is in the
/// cone (strictly, when `require_strict`).
Generator make_generator(RealFunction branch, bool require_strict = false,
                         const Grid& grid = default_negative_grid());

enum class Provenance { corollary1, theorem2, homogeneous, user, displacement_dual, rotation_dual };

std::string_view to_string(Provenance p);

struct CandidateSolution {
  RealFunction f;  ///< piecewise at 0; f restricted to (-inf, 0] is generator.branch
  Provenance provenance;
  Generator generator;
  ConeReport cone;                    ///< membership of f on the full validation grid
  std::vector<std::string> warnings;  ///< flagged, not rejected
};

/// Wraps an arbitrary f defined on the reals. Cone violations are recorded as
/// warnings rather than rejected.
CandidateSolution make_candidate(RealFunction f, Provenance provenance = Provenance::user,
                                 const Grid& grid = default_full_grid());

inline constexpr double kSolveTolClosedForm = 1e-9;
inline constexpr double kSolveTolSampled = 1e-6;

/// 1e-6 for sample-backed functions, 1e-9 otherwise.
double solve_tolerance(const RealFunction& f);

/// f(f(-x) + x) - (f(-f(x)) + f(x)) at one point, evaluated in extended
/// precision. Domain escapes are rethrown naming the offending sub-expression.
double eq1_pointwise(const RealFunction& f, double x);

ResidualReport eq1_residual(const RealFunction& f, const Grid& grid = default_full_grid(),
                            const ScanOptions& options = {});

struct LemmaResiduals {
  ResidualReport first;   ///< [id - (f_-)^{-id}, f_+]
  ResidualReport second;  ///< [(f_-)^{-id}, id - f_+]

  double max_sup() const { return std::max(first.sup, second.sup); }
};

/// The two commutators whose joint vanishing on [0, inf) is equivalent to
/// eq1_residual vanishing on the full line.
LemmaResiduals lemma_residuals(const CandidateSolution& f, const Grid& grid = default_positive_grid(),
                               const ScanOptions& options = {});

/// f = φ on (-inf, 0], f = id - (φ)^{-id} on [0, inf). Non-strict generators
/// are accepted with a warning; generators outside the cone are rejected.
CandidateSolution corollary1_extend(const Generator& phi);

/// id - f, generated by id - ψ.
CandidateSolution displacement_dual(const CandidateSolution& f);

/// x -> -f(-x); the generator becomes the reflection of f_+.
CandidateSolution rotate_dual(const CandidateSolution& f);

/// a·x on (-inf, 0], b·x on [0, inf); both slopes in (0, 1).
CandidateSolution homogeneous_solution(double a, double b);

}  // namespace qga
