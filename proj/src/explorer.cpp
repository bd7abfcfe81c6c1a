#include "qga/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "qga/error.hpp"

namespace qga {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

double l1_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += std::abs(c);
  return s;
}

}  // namespace

std::string_view to_string(Objective o) { return o == Objective::eq13 ? "eq13" : "eq12"; }

Objective objective_from_string(std::string_view s) {
  if (s == "eq13") return Objective::eq13;
  if (s == "eq12") return Objective::eq12;
  throw ValidationError("unknown objective \"" + std::string(s) + "\"");
}

std::string_view to_string(Verdict v) {
  return v == Verdict::no_candidate ? "no sub-tolerance non-homogeneous candidate found"
                                    : "candidate found (flagged for closed-form audit)";
}

double default_amplitude_bound(std::size_t coefficients, double omega) {
  if (coefficients == 0) return 0.0;
  const double harmonics = static_cast<double>((coefficients + 1) / 2);
  return 0.9 * omega / (2.0 * std::numbers::pi * harmonics);
}

Grid explorer_default_grid() { return Grid::log_spaced(1e-2, 1.0, 256); }

void SearchConfig::validate() const {
  if (!grid.within(Interval::positive())) throw ValidationError("search config: grid must lie in (0, inf)");
  if (!(amplitude_bound >= 0.0) || !std::isfinite(amplitude_bound)) {
    throw ValidationError("search config: amplitude bound must be finite and nonnegative");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("search config: omega must be positive");
  if (!(amplitude_bound < omega)) throw ValidationError("search config: amplitude bound must stay below omega");
  if (restarts < 1) throw ValidationError("search config: need at least one restart");
  if (!(delta >= 0.0) || !(lambda >= 0.0)) throw ValidationError("search config: delta and lambda must be >= 0");
  if (!(a_min > 0.0 && a_min < a_max && a_max < 1.0)) {
    throw ValidationError("search config: need 0 < a_min < a_max < 1");
  }
  const auto& o = optimizer;
  if (!(o.reflection > 0.0 && o.expansion > 1.0 && o.contraction > 0.0 && o.contraction < 1.0 && o.shrink > 0.0 &&
        o.shrink < 1.0 && o.tolerance > 0.0 && o.max_iterations > 0)) {
    throw ValidationError("search config: invalid Nelder-Mead parameters");
  }
  if (!(verdict_threshold > 0.0)) throw ValidationError("search config: verdict threshold must be positive");
}

PeriodicFunction family_periodic(const FamilyPoint& p, double omega) {
  std::vector<double> cos_c;
  std::vector<double> sin_c;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) (i % 2 == 0 ? cos_c : sin_c).push_back(p.coeffs[i]);
  return PeriodicFunction::trigonometric(omega, omega, std::move(cos_c), std::move(sin_c));
}

RealFunction family_function(const FamilyPoint& p, double omega) {
  return build_branch(AbelConjugacy::log_gauge(p.a, omega), family_periodic(p, omega));
}

double objective_eval(const FamilyPoint& p, const SearchConfig& config) {
  if (!(p.a >= config.a_min && p.a <= config.a_max)) return kInf;
  if (p.coeffs.size() != config.coefficients) return kInf;
  if (!std::all_of(p.coeffs.begin(), p.coeffs.end(), [](double c) { return std::isfinite(c); })) return kInf;
  if (l1_norm(p.coeffs) > config.amplitude_bound) return kInf;
  try {
    const RealFunction g = family_function(p, config.omega);
    if (config.objective == Objective::eq13) return eq13_residual(g, config.grid).sup;
    require_cone_interior(g, config.grid, "objective_eval");
    const AbelConjugacy b = AbelConjugacy::log_gauge(1.0 - p.a, config.omega);
    return eq12_residual(AbelConjugacy::log_gauge(p.a, config.omega), family_periodic(p, config.omega), b,
                         PeriodicFunction::constant(config.omega, config.omega), config.grid)
        .sup;
  } catch (const Error&) {
    return kInf;
  }
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                             const std::vector<double>& steps, const NelderMeadOptions& o,
                             const std::function<void(int, double)>& on_iteration) {
  if (steps.size() != start.size()) throw ValidationError("nelder_mead: step and start sizes differ");
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] != 0.0) active.push_back(i);
  }
  const std::size_t n = active.size();

  struct Vertex {
    std::vector<double> x;
    double v;
  };
  std::vector<Vertex> simplex;
  simplex.push_back({start, f(start)});
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> x = start;
    x[active[k]] += steps[active[k]];
    simplex.push_back({x, f(x)});
  }
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      for (std::size_t k : active) d = std::max(d, std::abs(simplex[i].x[k] - simplex[0].x[k]));
    }
    return d;
  };
  auto along = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> x = from;
    for (std::size_t k : active) x[k] = from[k] + t * (to[k] - from[k]);
    return x;
  };

  order();
  int it = 0;
  bool converged = n == 0;
  while (!converged && it < o.max_iterations) {
    ++it;
    std::vector<double> centroid = simplex[0].x;
    for (std::size_t k : active) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += simplex[i].x[k];
      centroid[k] = s / static_cast<double>(n);
    }
    Vertex& worst = simplex[n];
    const std::vector<double> xr = along(centroid, worst.x, -o.reflection);
    const double fr = f(xr);
    bool shrink = false;
    if (fr < simplex[0].v) {
      const std::vector<double> xe = along(centroid, xr, o.expansion);
      const double fe = f(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[n - 1].v) {
      worst = {xr, fr};
    } else if (fr < worst.v) {
      const std::vector<double> xc = along(centroid, xr, o.contraction);
      const double fc = f(xc);
      if (fc <= fr) {
        worst = {xc, fc};
      } else {
        shrink = true;
      }
    } else {
      const std::vector<double> xc = along(centroid, worst.x, o.contraction);
      const double fc = f(xc);
      if (fc < worst.v) {
        worst = {xc, fc};
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t i = 1; i < simplex.size(); ++i) {
        simplex[i].x = along(simplex[0].x, simplex[i].x, o.shrink);
        simplex[i].v = f(simplex[i].x);
      }
    }
    order();
    if (on_iteration) on_iteration(it, simplex[0].v);
    converged = diameter() < o.tolerance;
  }
  return {simplex[0].x, simplex[0].v, it, converged};
}

SearchOutcome search(const SearchConfig& config) {
  config.validate();
  const std::size_t dims = 1 + config.coefficients;
  std::vector<RestartSummary> summaries(static_cast<std::size_t>(config.restarts));
  std::vector<std::vector<TraceRow>> traces(static_cast<std::size_t>(config.restarts));

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < config.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint64_t>(config.seed & 0xffffffffu), config.seed >> 32,
                      static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> start(dims);
    start[0] = config.a_min + (config.a_max - config.a_min) * unit(rng);
    for (std::size_t k = 1; k < dims; ++k) start[k] = config.amplitude_bound * (2.0 * unit(rng) - 1.0);
    std::vector<double> coeffs(start.begin() + 1, start.end());
    const double l1 = l1_norm(coeffs);
    if (l1 > config.amplitude_bound && l1 > 0.0) {
      const double scale = 0.99 * config.amplitude_bound / l1;
      for (std::size_t k = 1; k < dims; ++k) start[k] *= scale;
    }
    std::vector<double> steps(dims, 0.25 * config.amplitude_bound);
    steps[0] = 0.1 * (config.a_max - config.a_min);

    RestartSummary& summary = summaries[static_cast<std::size_t>(r)];
    summary.best_residual = kInf;
    auto penalized = [&](const std::vector<double>& x) {
      FamilyPoint p{x[0], std::vector<double>(x.begin() + 1, x.end())};
      const double value = objective_eval(p, config);
      const double norm = sup_norm(p.coeffs);
      if (norm >= config.delta && value < summary.best_residual) {
        summary.best_residual = value;
        summary.best = p;
      }
      return value + config.lambda * std::max(0.0, config.delta - norm);
    };
    auto& trace = traces[static_cast<std::size_t>(r)];
    const NelderMeadResult res =
        nelder_mead(penalized, start, steps, config.optimizer, [&](int it, double best) {
          trace.push_back({r, it, best});
        });
    summary.iterations = res.iterations;
    summary.converged = res.converged;
    if (!std::isfinite(summary.best_residual)) {
      summary.best = {res.x[0], std::vector<double>(res.x.begin() + 1, res.x.end())};
    }
  }

  SearchOutcome out;
  out.verdict_threshold = config.verdict_threshold;
  out.best_residual = kInf;
  for (int r = 0; r < config.restarts; ++r) {
    const auto& s = summaries[static_cast<std::size_t>(r)];
    if (out.best_restart < 0 || s.best_residual < out.best_residual) {
      out.best_restart = r;
      out.best_residual = s.best_residual;
      out.best = s.best;
    }
    out.trace.insert(out.trace.end(), traces[static_cast<std::size_t>(r)].begin(),
                     traces[static_cast<std::size_t>(r)].end());
  }
  out.restarts = std::move(summaries);
  out.verdict = out.best_residual < config.verdict_threshold ? Verdict::candidate_found : Verdict::no_candidate;
  return out;
}

std::vector<ScanRow> perturbation_scan(double a, const std::vector<double>& amplitudes, const SearchConfig& config) {
  if (!(a > 0.0 && a < 1.0)) throw ValidationError("perturbation_scan: a must lie in (0, 1)");
  std::vector<ScanRow> rows;
  for (double amp : amplitudes) {
    if (!std::isfinite(amp) || !(2.0 * std::numbers::pi * std::abs(amp) / config.omega < 1.0)) {
      throw ValidationError("perturbation_scan: amplitude outside the monotonicity bound");
    }
    FamilyPoint p{a, {amp}};
    rows.push_back({amp, eq13_residual(family_function(p, config.omega), config.grid).sup});
  }
  return rows;
}

}  // namespace qga
