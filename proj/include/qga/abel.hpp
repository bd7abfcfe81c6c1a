#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "qga/funcalg.hpp"
#include "qga/periodic.hpp"
#include "qga/solutions.hpp"

namespace qga {

/// Profile used for the Abel function on the fundamental domain (g(x0), x0].
///
/// Whatever the profile, it is rescaled so that it runs from ω at g(x0) down
/// to 0 at x0.
struct Seed {
  enum class Kind { linear, log_linear, custom };

  Kind kind = Kind::linear;
  std::optional<RealFunction> profile;  ///< strictly decreasing on the fundamental domain (custom only)

  static Seed linear() { return {}; }
  /// Linear in log x; gives the logarithmic gauge exactly when g is linear and x0 = 1.
  static Seed log_linear() { return {Kind::log_linear, std::nullopt}; }
  static Seed custom(RealFunction profile) { return {Kind::custom, std::move(profile)}; }
};

std::string_view to_string(Seed::Kind k);

inline constexpr int kAbelIterationCap = 10000;

/// Log-spaced [1e-4, 1e4], 1024 points: the default grid for conjugacy work.
Grid abel_default_grid();

struct AbelOptions {
  double omega = 1.0;
  double x0 = 1.0;
  Seed seed = Seed::linear();
  int iteration_cap = kAbelIterationCap;
  /// Samples on which g is checked to be positive, strictly increasing and below id.
  std::optional<Grid> validation;
};

/// Decreasing Abel function α of g on (0, inf): α(g(x)) = α(x) + ω, α(x0) = 0.
///
/// Two bodies are supported. The recursive body evaluates α from a seed on the
/// fundamental domain by walking the orbit of x (forward with g above x0,
/// backward with g^{-1} below g(x0)); walks longer than the iteration cap
/// throw IterationCapError. The log-gauge body is the closed form
/// α(x) = ω·ln x / ln a for g = a·id.
class AbelConjugacy {
 public:
  static AbelConjugacy log_gauge(double slope, double omega = 1.0);

  const RealFunction& g() const;
  double omega() const;
  double x0() const;
  /// g(x0), the open end of the fundamental domain.
  double fundamental_lo() const;
  int iteration_cap() const;
  const Seed& seed() const;
  bool is_log_gauge() const;
  double log_gauge_slope() const;

  double alpha(double x) const;
  double alpha_inverse(double v) const;
  /// Solves g(t) = z for t > z.
  double g_inverse(double z) const;

  RealFunction alpha_function() const;

 private:
  struct Impl;
  explicit AbelConjugacy(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend AbelConjugacy solve_abel(const RealFunction& g, const AbelOptions& options);

  std::shared_ptr<const Impl> impl_;
};

/// Throws ValidationError if g is not positive, strictly increasing and below
/// the identity on the validation samples, or if the seed profile is not
/// strictly decreasing on the fundamental domain.
AbelConjugacy solve_abel(const RealFunction& g, const AbelOptions& options = {});
AbelConjugacy solve_abel(const RealFunction& g, double omega, double x0, Seed seed = Seed::linear());

/// α(g(x)) - α(x) - ω.
ResidualReport abel_residual(const AbelConjugacy& c, const Grid& grid, const ScanOptions& options = {});

/// x -> α^{-1}(α(x) + ω).
RealFunction reconstruct_g(const AbelConjugacy& c);

/// x -> α^{-1}(P(α(x)) + α(x)); commutes with g for every P of period ω.
/// Throws ValidationError on a period mismatch.
RealFunction build_branch(const AbelConjugacy& c, const PeriodicFunction& p);

struct PeriodicExtraction {
  PeriodicFunction p;          ///< P(u) = α(h(α^{-1}(u))) - u sampled over [0, ω)
  ResidualReport periodicity;  ///< P(u + kω) - P(u), k = ±1, ±2
};

PeriodicExtraction extract_periodic(const RealFunction& h, const AbelConjugacy& c, std::size_t samples = 256);

struct FixedZeroReport {
  std::vector<double> fixed_points;    ///< x with h(x) = x, localized on the grid
  std::vector<double> periodic_zeros;  ///< u in [0, ω) with P(u) = 0
  std::vector<double> unmatched_fixed_points;
  std::vector<double> unmatched_zeros;  ///< α-images u + kω inside the grid range without a fixed point
  bool identically_fixed = false;
  bool periodic_identically_zero = false;
  double periodicity_residual = 0.0;
  bool consistent = true;
};

/// Checks P^{-1}(0) = α({h(x) = x}) on a grid: fixed points are found from
/// sign changes and touching minima of h - id, zeros of P likewise over one
/// period, and the two sets are paired through α.
FixedZeroReport fixed_zero_correspondence(const RealFunction& h, const AbelConjugacy& c, const Grid& grid,
                                          double tol = 1e-9);

struct Theorem2Options {
  double x0 = 1.0;
  Seed seed = Seed::log_linear();
  int iteration_cap = kAbelIterationCap;
  Grid grid = abel_default_grid();
};

struct Theorem2Result {
  CandidateSolution candidate;
  AbelConjugacy conjugacy;  ///< α₂ for g₂ = id - (ψ_-)^{-id}
  ResidualReport first;     ///< [id - (ψ_-)^{-id}, f_+], zero by construction
  ResidualReport second;    ///< [(ψ_-)^{-id}, id - f_+], certifies solution status
};

/// f = ψ on (-inf, 0], f_+ = α₂^{-1}(P₂(α₂) + α₂) on (0, inf).
Theorem2Result theorem2_construct(const Generator& psi, const PeriodicFunction& p2,
                                  const Theorem2Options& options = {});

/// α^{-1}(P(α(x)) + α(x)) + β^{-1}(Q(β(x)) + β(x)) - x.
///
/// Both conjugacies use the decreasing convention with positive P, Q; an
/// increasing β with negative Q is the same branch after β -> -β, Q -> -Q.
ResidualReport eq12_residual(const AbelConjugacy& a, const PeriodicFunction& p, const AbelConjugacy& b,
                             const PeriodicFunction& q, const Grid& grid, const ScanOptions& options = {});

}  // namespace qga
