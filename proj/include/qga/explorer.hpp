#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "qga/abel.hpp"
#include "qga/verify.hpp"

namespace qga {

enum class Objective { eq13, eq12 };

std::string_view to_string(Objective o);
Objective objective_from_string(std::string_view s);

/// Base slope a of the log gauge of a·id, and coefficients of
/// P(u) = ω + Σ_k (c_k cos(2πk u/ω) + d_k sin(2πk u/ω)), stored as
/// c_1, d_1, c_2, d_2, ...
struct FamilyPoint {
  double a = 0.5;
  std::vector<double> coeffs;
};

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double tolerance = 1e-10;  ///< on the simplex diameter (max vertex distance from the best vertex)
  int max_iterations = 2000;
};

/// 0.9·ω / (2π·K), K the highest harmonic: keeps Lip(P) < 1, so the family
/// member is strictly increasing, and P > 0.
double default_amplitude_bound(std::size_t coefficients, double omega = 1.0);

/// Log-spaced [1e-2, 1], 256 points.
Grid explorer_default_grid();

struct SearchConfig {
  Objective objective = Objective::eq13;
  Grid grid = explorer_default_grid();
  std::size_t coefficients = 4;
  double amplitude_bound = default_amplitude_bound(4);
  NelderMeadOptions optimizer;
  int restarts = 20;
  std::uint64_t seed = 42;
  double delta = 0.05;    ///< exclusion radius around the homogeneous locus (sup norm of coefficients)
  double lambda = 1e3;    ///< exclusion penalty weight
  double omega = 1.0;
  double a_min = 0.05;
  double a_max = 0.95;
  double verdict_threshold = 1e-9;

  /// Throws ValidationError on nonsensical settings.
  void validate() const;
};

PeriodicFunction family_periodic(const FamilyPoint& p, double omega);
/// build_branch over the log gauge of a·id with the family P.
RealFunction family_function(const FamilyPoint& p, double omega);

/// Selected residual sup, or +inf when p breaks the family invariants
/// (a outside [a_min, a_max], Σ|coeffs| above the amplitude bound, wrong
/// coefficient count) or the member leaves the cone on the grid.
///
/// eq13 scores the member g itself; eq12 scores g + (1-a)·id - id, with the
/// second branch built over the log gauge of (1-a)·id and Q ≡ ω.
double objective_eval(const FamilyPoint& p, const SearchConfig& config);

enum class Verdict { no_candidate, candidate_found };

/// The two fixed verdict strings.
std::string_view to_string(Verdict v);

inline constexpr std::string_view kEvidenceNote =
    "numerical evidence only: a finite search over one parametrized family neither proves nor refutes the "
    "conjecture; the verdict threshold is an engineering choice";

struct TraceRow {
  int restart;
  int iteration;
  double best_value;  ///< best penalized objective in the simplex after this iteration
};

struct RestartSummary {
  FamilyPoint best;        ///< best evaluated point with ||coeffs||_inf >= delta
  double best_residual;    ///< its objective, +inf if no such point was evaluated
  int iterations;
  bool converged;          ///< simplex diameter fell below tolerance
};

struct SearchOutcome {
  FamilyPoint best;
  double best_residual = 0.0;
  int best_restart = -1;
  std::vector<TraceRow> trace;
  std::vector<RestartSummary> restarts;
  Verdict verdict = Verdict::no_candidate;
  double verdict_threshold = 1e-9;
  std::string note{kEvidenceNote};
};

/// Multi-restart Nelder–Mead on objective + λ·max(0, δ - ||coeffs||_inf).
/// Restart r is seeded from (seed, r); the outcome does not depend on
/// scheduling or thread count.
SearchOutcome search(const SearchConfig& config);

struct ScanRow {
  double amplitude;
  double residual;
};

/// eq13 residual of the family member P(u) = ω + A·cos(2πu/ω) over the log
/// gauge of a·id, for each amplitude A. Throws ValidationError for A with
/// 2π|A|/ω >= 1 (the member would stop being increasing) or a outside (0, 1).
std::vector<ScanRow> perturbation_scan(double a, const std::vector<double>& amplitudes, const SearchConfig& config);

/// Minimizes f from `start` with per-coordinate initial steps; zero steps freeze a coordinate.
/// `on_iteration(iteration, best_value)` is called after every iteration.
struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                             const std::vector<double>& steps, const NelderMeadOptions& options,
                             const std::function<void(int, double)>& on_iteration = {});

}  // namespace qga
