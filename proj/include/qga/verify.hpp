#pragma once

#include <array>
#include <optional>

#include "qga/abel.hpp"
#include "qga/funcalg.hpp"
#include "qga/solutions.hpp"

namespace qga {

inline constexpr double kPairTolerance = 1e-12;

/// r1 + r2 = id with 0 < r1, r2 < id, validated on a grid.
class DecompositionPair {
 public:
  /// Throws ValidationError when |r1 + r2 - x| > tol·max(1, x) or either map
  /// leaves (0, x) at some grid point.
  DecompositionPair(RealFunction r1, RealFunction r2, const Grid& grid, double tol = kPairTolerance);
  /// r2 = id - r1.
  static DecompositionPair complement(RealFunction r1, const Grid& grid, double tol = kPairTolerance);

  const RealFunction& r1() const { return r1_; }
  const RealFunction& r2() const { return r2_; }

 private:
  RealFunction r1_;
  RealFunction r2_;
};

/// F(x) - F(r1(x)) - F(r2(x)).
ResidualReport sablik_residual(const RealFunction& f, const DecompositionPair& pair, const Grid& grid,
                               const ScanOptions& options = {});

struct LimitEvidence {
  std::array<double, 3> at{1e-4, 1e-5, 1e-6};
  std::array<double, 3> ratios{};  ///< F(x)/x at each point of `at`
  double slack = 1e-3;
  bool consistent = false;  ///< successive ratios differ by at most slack·max(1, |ratio|)
};

/// Evidence (not proof) that F(x)/x has a finite limit as x -> 0+.
LimitEvidence sablik_limit_evidence(const RealFunction& f, double slack = 1e-3);

/// u(x) - u(x - f0(x)) - u(f0(x)) with u = (ψ_-)^{-id}, on a grid in (0, inf).
ResidualReport theorem1_decomposition(const Generator& psi, const CandidateSolution& f0, const Grid& grid,
                                      const ScanOptions& options = {});

struct HomogeneityEstimate {
  double a;               ///< u(x_small)/x_small, u = (ψ_-)^{-id}
  ResidualReport report;  ///< u(x) - a·x
};

/// Six decades, log-spaced [1e-3, 1e3], 256 points.
Grid homogeneity_default_grid();

HomogeneityEstimate infer_homogeneity(const Generator& psi, const Grid& grid = homogeneity_default_grid(),
                                      double x_small = 1e-6, const ScanOptions& options = {});

/// Throws ValidationError unless 0 < g(x) < x at every grid point.
void require_cone_interior(const RealFunction& g, const Grid& grid, const char* who);

/// g(x) - g(x - g(x)) - g(g(x)); requires 0 < g < id on the grid.
ResidualReport eq13_residual(const RealFunction& g, const Grid& grid, const ScanOptions& options = {});

inline constexpr double kEquivalenceTolerance = 1e-8;

struct EquivalenceReport {
  ResidualReport commute;  ///< [g, id - g]
  ResidualReport eq13;
  double tol = kEquivalenceTolerance;
  bool common_abel_plausible = false;  ///< both residuals <= tol
  std::string grid;
  /// Periodicity residual of id - g over an Abel function of g, when requested.
  std::optional<double> abel_witness;
};

EquivalenceReport proposition5_check(const RealFunction& g, const Grid& grid, double tol = kEquivalenceTolerance,
                                     const std::optional<AbelOptions>& witness = std::nullopt,
                                     const ScanOptions& options = {});

}  // namespace qga
