#include "qga/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>

#include "qga/abel.hpp"
#include "qga/error.hpp"
#include "qga/explorer.hpp"
#include "qga/solutions.hpp"
#include "qga/spec_io.hpp"
#include "qga/verify.hpp"

namespace qga::cli {

namespace {

struct GridDefaults {
  double min;
  double max;
  std::size_t points;
  bool full_line = false;
};

constexpr GridDefaults kWorking{kWorkingMin, kWorkingMax, kWorkingPoints};
constexpr GridDefaults kWorkingFull{kWorkingMin, kWorkingMax, kWorkingPoints, true};
constexpr GridDefaults kAbel{1e-4, 1e4, 1024};
constexpr GridDefaults kSixDecades{1e-3, 1e3, 256};
constexpr GridDefaults kExplorer{1e-2, 1.0, 256};

struct Common {
  std::string grid = "default";
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<std::size_t> grid_points;
  std::optional<std::string> grid_spacing;
  std::optional<double> tol;
  std::string out;
  std::string trace;

  Grid resolve(const GridDefaults& d) const {
    std::optional<Grid> g;
    const bool overridden = grid_min || grid_max || grid_points || grid_spacing;
    if (grid != "default") {
      if (overridden) throw ValidationError("--grid cannot be combined with --grid-min/max/points/spacing");
      g = grid_from_json(load_json_argument(grid));
    } else if (overridden) {
      Json spec{{"min", grid_min.value_or(d.min)},
                {"max", grid_max.value_or(d.max)},
                {"points", grid_points.value_or(d.points)},
                {"spacing", grid_spacing.value_or("log")}};
      g = grid_from_json(spec);
    } else {
      g = Grid::log_spaced(d.min, d.max, d.points);
    }
    if (d.full_line && g->within(Interval::positive())) return Grid::symmetric(*g);
    return *g;
  }

  double tolerance(double fallback) const { return tol.value_or(fallback); }
  bool keep_trace() const { return !trace.empty(); }
  ScanOptions scan() const { return {Execution::parallel, keep_trace()}; }
};

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write \"" + tmp.string() + "\"");
    f << content;
    f.flush();
    if (!f) throw ValidationError("write failed for \"" + tmp.string() + "\"");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ValidationError("cannot move output into place at \"" + path + "\"");
  }
}

std::string csv(const ResidualReport& r) {
  std::ostringstream os;
  write_trace_csv(os, r);
  return os.str();
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json verdict(bool ok) { return ok ? "ok" : "fail"; }

struct Outcome {
  Json report;
  bool ok;
};

using Handler = std::function<Outcome()>;

// Options shared by handlers; every handler reads only what it registered.
struct Inputs {
  Common common;
  std::string f, phi, psi, p, p2, q, g, h, conj, alpha, beta, big_f, r1, r2, f0;
  double a = 0.5;
  double b = 0.5;
  double omega = 1.0;
  double x0 = 1.0;
  double x_small = 1e-6;
  std::string seed_kind;
  int cap = kAbelIterationCap;
  std::size_t samples = 256;
  bool witness = false;
  bool fixed_points = false;
  std::size_t coeffs = 4;
  std::optional<double> amplitude;
  int restarts = 20;
  std::uint64_t seed = 42;
  double delta = 0.05;
  double lambda = 1e3;
  int max_iter = 2000;
  std::vector<double> amplitudes{1e-3, 1e-2, 1e-1};
};

void add_grid(CLI::App* app, Common& c) {
  app->add_option("--grid", c.grid, "grid spec: \"default\", inline JSON or a file")->capture_default_str();
  app->add_option("--grid-min", c.grid_min, "grid lower end");
  app->add_option("--grid-max", c.grid_max, "grid upper end");
  app->add_option("--grid-points", c.grid_points, "number of grid points");
  app->add_option("--grid-spacing", c.grid_spacing, "log or linear")->check(CLI::IsMember({"log", "linear"}));
}

void add_common(CLI::App* app, Common& c) {
  add_grid(app, c);
  app->add_option("--tol", c.tol, "verdict tolerance");
  app->add_option("--out", c.out, "output file");
  app->add_option("--trace", c.trace, "residual trace CSV (x,residual)");
}

Seed seed_from(const std::string& kind, Seed fallback) {
  if (kind.empty()) return fallback;
  if (kind == "linear") return Seed::linear();
  if (kind == "log_linear") return Seed::log_linear();
  throw ValidationError("--seed-kind must be linear or log_linear");
}

RealFunction fn(const std::string& arg) { return function_from_json(load_json_argument(arg)); }

void emit_trace(const Common& c, const ResidualReport& r) {
  if (c.keep_trace()) write_atomic(c.trace, csv(r));
}

void emit_function(const Common& c, const RealFunction& f) {
  if (!c.out.empty()) write_atomic(c.out, function_to_json(f).dump(2) + "\n");
}

Json candidate_json(const CandidateSolution& c) {
  return Json{{"provenance", std::string(to_string(c.provenance))},
              {"generator", to_json(c.generator.validation)},
              {"cone", to_json(c.cone)},
              {"warnings", c.warnings}};
}

Outcome eq1_outcome(const char* verb, const CandidateSolution& c, const Common& common, const Grid& grid) {
  const ResidualReport r = eq1_residual(c.f, grid, common.scan());
  emit_trace(common, r);
  const double tol = common.tolerance(solve_tolerance(c.f));
  Json j = candidate_json(c);
  j["verb"] = verb;
  j["eq1"] = to_json(r);
  j["tol"] = tol;
  j["verdict"] = verdict(r.within(tol));
  return {j, r.within(tol)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constructs and verifies solutions of f(f(-x) + x) = f(-f(x)) + f(x)", "qga"};
  app.require_subcommand(1);
  Inputs in;
  Common& cm = in.common;
  std::map<CLI::App*, Handler> handlers;

  auto group = [&](const char* name, const char* desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };
  auto verb = [&](CLI::App* parent, const char* name, const char* desc, Handler h) {
    CLI::App* v = parent->add_subcommand(name, desc);
    add_common(v, cm);
    handlers[v] = std::move(h);
    return v;
  };

  // construct
  CLI::App* construct = group("construct", "build a candidate solution");
  verb(construct, "corollary1", "extend a generator by x - (phi)^{-id}(x) on [0, inf)", [&] {
        const CandidateSolution c = corollary1_extend(make_generator(fn(in.phi)));
        emit_function(cm, c.f);
        return eq1_outcome("construct corollary1", c, cm, cm.resolve(kWorkingFull));
      })->add_option("--phi", in.phi, "generator spec on (-inf, 0]")->required();
  {
    CLI::App* v = verb(construct, "homogeneous", "two-slope solution a·x (x <= 0), b·x (x >= 0)", [&] {
      const CandidateSolution c = homogeneous_solution(in.a, in.b);
      emit_function(cm, c.f);
      return eq1_outcome("construct homogeneous", c, cm, cm.resolve(kWorkingFull));
    });
    v->add_option("--a", in.a, "slope on (-inf, 0]")->required();
    v->add_option("--b", in.b, "slope on [0, inf)")->required();
  }
  {
    CLI::App* v = verb(construct, "theorem2", "positive branch from an Abel function and a positive periodic P2", [&] {
      Theorem2Options o;
      o.x0 = in.x0;
      o.seed = seed_from(in.seed_kind, Seed::log_linear());
      o.iteration_cap = in.cap;
      o.grid = cm.resolve(kAbel);
      const Theorem2Result r =
          theorem2_construct(make_generator(fn(in.psi), true), periodic_from_json(load_json_argument(in.p2)), o);
      emit_function(cm, r.candidate.f);
      emit_trace(cm, r.second);
      const double tol = cm.tolerance(1e-9);
      Json j = candidate_json(r.candidate);
      j["verb"] = "construct theorem2";
      j["first_commutator"] = to_json(r.first);
      j["second_commutator"] = to_json(r.second);
      j["conjugacy"] = conjugacy_to_json(r.conjugacy);
      j["tol"] = tol;
      j["verdict"] = verdict(r.second.within(tol));
      return Outcome{j, r.second.within(tol)};
    });
    v->add_option("--psi", in.psi, "generator spec on (-inf, 0]")->required();
    v->add_option("--p2", in.p2, "periodic spec (period = omega of the conjugacy)")->required();
    v->add_option("--x0", in.x0, "base point of the fundamental domain")->capture_default_str();
    v->add_option("--seed-kind", in.seed_kind, "linear or log_linear (default log_linear)");
    v->add_option("--cap", in.cap, "orbit iteration cap")->capture_default_str();
  }

  // verify
  CLI::App* verify = group("verify", "residual checks");
  verb(verify, "eq1", "sup |f(f(-x)+x) - f(-f(x)) - f(x)|", [&] {
        return eq1_outcome("verify eq1", make_candidate(fn(in.f)), cm, cm.resolve(kWorkingFull));
      })->add_option("--f", in.f, "function spec on R")->required();
  verb(verify, "lemma", "the two commutator residuals on (0, inf)", [&] {
        const CandidateSolution c = make_candidate(fn(in.f));
        const LemmaResiduals r = lemma_residuals(c, cm.resolve(kWorking), cm.scan());
        emit_trace(cm, r.first.sup >= r.second.sup ? r.first : r.second);
        const double tol = cm.tolerance(solve_tolerance(c.f));
        Json j = candidate_json(c);
        j["verb"] = "verify lemma";
        j["first"] = to_json(r.first);
        j["second"] = to_json(r.second);
        j["tol"] = tol;
        j["verdict"] = verdict(r.max_sup() <= tol);
        return Outcome{j, r.max_sup() <= tol};
      })->add_option("--f", in.f, "function spec on R")->required();
  {
    CLI::App* v = verb(verify, "eq12", "sup |a^{-1}(P(a)+a) + b^{-1}(Q(b)+b) - id|", [&] {
      const ResidualReport r =
          eq12_residual(conjugacy_from_json(load_json_argument(in.alpha)), periodic_from_json(load_json_argument(in.p)),
                        conjugacy_from_json(load_json_argument(in.beta)), periodic_from_json(load_json_argument(in.q)),
                        cm.resolve(kAbel), cm.scan());
      emit_trace(cm, r);
      const double tol = cm.tolerance(1e-9);
      return Outcome{Json{{"verb", "verify eq12"}, {"eq12", to_json(r)}, {"tol", tol}, {"verdict", verdict(r.within(tol))}},
                     r.within(tol)};
    });
    v->add_option("--alpha", in.alpha, "conjugacy spec")->required();
    v->add_option("--p", in.p, "periodic spec")->required();
    v->add_option("--beta", in.beta, "conjugacy spec")->required();
    v->add_option("--q", in.q, "periodic spec")->required();
  }
  {
    CLI::App* v = verb(verify, "sablik", "sup |F(x) - F(r1(x)) - F(r2(x))| with r1 + r2 = id", [&] {
      const Grid grid = cm.resolve(kSixDecades);
      const RealFunction big_f = fn(in.big_f);
      const DecompositionPair pair = in.r2.empty() ? DecompositionPair::complement(fn(in.r1), grid)
                                                   : DecompositionPair(fn(in.r1), fn(in.r2), grid);
      const ResidualReport r = sablik_residual(big_f, pair, grid, cm.scan());
      emit_trace(cm, r);
      const LimitEvidence e = sablik_limit_evidence(big_f);
      const double tol = cm.tolerance(1e-9);
      Json j{{"verb", "verify sablik"}, {"sablik", to_json(r)}, {"tol", tol}, {"verdict", verdict(r.within(tol))}};
      j["limit_evidence"] = Json{{"at", e.at}, {"ratios", e.ratios}, {"slack", e.slack}, {"consistent", e.consistent},
                                 {"note", "finite samples are evidence for the limit, not a proof"}};
      return Outcome{j, r.within(tol)};
    });
    v->add_option("--F", in.big_f, "function spec on (0, inf)")->required();
    v->add_option("--r1", in.r1, "first decomposition map")->required();
    v->add_option("--r2", in.r2, "second decomposition map (default id - r1)");
  }
  verb(verify, "eq13", "sup |g(x) - g(x - g(x)) - g(g(x))|", [&] {
        const ResidualReport r = eq13_residual(fn(in.g), cm.resolve(kWorking), cm.scan());
        emit_trace(cm, r);
        const double tol = cm.tolerance(kEquivalenceTolerance);
        return Outcome{Json{{"verb", "verify eq13"}, {"eq13", to_json(r)}, {"tol", tol}, {"verdict", verdict(r.within(tol))}},
                       r.within(tol)};
      })->add_option("--g", in.g, "function spec on (0, inf)")->required();
  {
    CLI::App* v = verb(verify, "prop5", "[g, id - g] and g - g(id - g) - g(g) side by side", [&] {
      std::optional<AbelOptions> witness;
      if (in.witness) {
        AbelOptions o;
        o.omega = in.omega;
        o.x0 = in.x0;
        o.iteration_cap = in.cap;
        witness = o;
      }
      const EquivalenceReport r =
          proposition5_check(fn(in.g), cm.resolve(kWorking), cm.tolerance(kEquivalenceTolerance), witness, cm.scan());
      emit_trace(cm, r.eq13);
      Json j{{"verb", "verify prop5"},
             {"commute", to_json(r.commute)},
             {"eq13", to_json(r.eq13)},
             {"tol", r.tol},
             {"common_abel_plausible", r.common_abel_plausible},
             {"abel_witness", r.abel_witness ? Json(*r.abel_witness) : Json(nullptr)},
             {"verdict", verdict(r.common_abel_plausible)}};
      return Outcome{j, r.common_abel_plausible};
    });
    v->add_option("--g", in.g, "function spec on (0, inf)")->required();
    v->add_flag("--witness", in.witness, "also solve Abel for g and report the periodicity residual of id - g");
    v->add_option("--omega", in.omega, "omega for the witness conjugacy")->capture_default_str();
    v->add_option("--x0", in.x0, "base point for the witness conjugacy")->capture_default_str();
    v->add_option("--cap", in.cap, "orbit iteration cap")->capture_default_str();
  }

  // dual
  CLI::App* dual = group("dual", "exact dualities of the solution space");
  verb(dual, "displacement", "f -> id - f", [&] {
        const CandidateSolution c = displacement_dual(make_candidate(fn(in.f)));
        emit_function(cm, c.f);
        return eq1_outcome("dual displacement", c, cm, cm.resolve(kWorkingFull));
      })->add_option("--f", in.f, "function spec on R")->required();
  verb(dual, "rotate", "f -> -f(-x)", [&] {
        const CandidateSolution c = rotate_dual(make_candidate(fn(in.f)));
        emit_function(cm, c.f);
        return eq1_outcome("dual rotate", c, cm, cm.resolve(kWorkingFull));
      })->add_option("--f", in.f, "function spec on R")->required();

  // abel
  CLI::App* abel = group("abel", "Abel conjugacies");
  {
    CLI::App* v = verb(abel, "solve", "Abel function of g with alpha(x0) = 0", [&] {
      AbelOptions o;
      o.omega = in.omega;
      o.x0 = in.x0;
      o.seed = seed_from(in.seed_kind, Seed::linear());
      o.iteration_cap = in.cap;
      const Grid grid = cm.resolve(kAbel);
      o.validation = grid;
      const AbelConjugacy c = solve_abel(fn(in.g), o);
      const ResidualReport r = abel_residual(c, grid, cm.scan());
      emit_trace(cm, r);
      const Json spec = conjugacy_to_json(c);
      if (!cm.out.empty()) write_atomic(cm.out, spec.dump(2) + "\n");
      const double tol = cm.tolerance(1e-9);
      return Outcome{Json{{"verb", "abel solve"},
                          {"conjugacy", spec},
                          {"abel", to_json(r)},
                          {"tol", tol},
                          {"verdict", verdict(r.within(tol))}},
                     r.within(tol)};
    });
    v->add_option("--g", in.g, "function spec, increasing with 0 < g < id on (0, inf)")->required();
    v->add_option("--omega", in.omega, "translation length")->capture_default_str();
    v->add_option("--x0", in.x0, "base point")->capture_default_str();
    v->add_option("--seed-kind", in.seed_kind, "linear or log_linear (default linear)");
    v->add_option("--cap", in.cap, "orbit iteration cap")->capture_default_str();
  }
  verb(abel, "reconstruct", "sup |alpha^{-1}(alpha(x) + omega) - g(x)|", [&] {
        const AbelConjugacy c = conjugacy_from_json(load_json_argument(in.conj));
        const RealFunction rec = reconstruct_g(c);
        const RealFunction& g = c.g();
        const ResidualReport r = scan_residual(
            cm.resolve(kAbel), [&](double x) { return rec(x) - g(x); }, cm.scan());
        emit_trace(cm, r);
        const double tol = cm.tolerance(1e-9);
        return Outcome{Json{{"verb", "abel reconstruct"}, {"reconstruction", to_json(r)}, {"tol", tol},
                            {"verdict", verdict(r.within(tol))}},
                       r.within(tol)};
      })->add_option("--conj", in.conj, "conjugacy spec")->required();

  // branch
  CLI::App* branch = group("branch", "periodic-displacement branches");
  {
    CLI::App* v = verb(branch, "build", "h = alpha^{-1}(P(alpha) + alpha); reports [g, h]", [&] {
      const AbelConjugacy c = conjugacy_from_json(load_json_argument(in.conj));
      const RealFunction h = build_branch(c, periodic_from_json(load_json_argument(in.p)));
      const ResidualReport r = commutator_residual(c.g(), h, cm.resolve(kAbel), cm.scan());
      emit_trace(cm, r);
      emit_function(cm, h);
      const double tol = cm.tolerance(1e-8);
      return Outcome{Json{{"verb", "branch build"}, {"commutator", to_json(r)}, {"tol", tol},
                          {"verdict", verdict(r.within(tol))}},
                     r.within(tol)};
    });
    v->add_option("--conj", in.conj, "conjugacy spec")->required();
    v->add_option("--p", in.p, "periodic spec")->required();
  }
  {
    CLI::App* v = verb(branch, "extract", "P(u) = alpha(h(alpha^{-1}(u))) - u over one period", [&] {
      const AbelConjugacy c = conjugacy_from_json(load_json_argument(in.conj));
      const RealFunction h = fn(in.h);
      const PeriodicExtraction e = extract_periodic(h, c, in.samples);
      if (!cm.out.empty()) write_atomic(cm.out, periodic_to_json(e.p).dump(2) + "\n");
      const double tol = cm.tolerance(1e-8);
      Json j{{"verb", "branch extract"},
             {"periodicity", to_json(e.periodicity)},
             {"periodic", periodic_to_json(e.p)},
             {"tol", tol},
             {"verdict", verdict(e.periodicity.within(tol))}};
      if (in.fixed_points) {
        const FixedZeroReport f = fixed_zero_correspondence(h, c, cm.resolve(kAbel));
        j["fixed_zero"] = Json{{"fixed_points", f.identically_fixed ? Json("all") : Json(f.fixed_points)},
                               {"periodic_zeros", f.periodic_identically_zero ? Json("all") : Json(f.periodic_zeros)},
                               {"unmatched_fixed_points", f.unmatched_fixed_points},
                               {"unmatched_zeros", f.unmatched_zeros},
                               {"consistent", f.consistent}};
      }
      return Outcome{j, e.periodicity.within(tol)};
    });
    v->set_help_flag("--help", "print this help message and exit");
    v->add_option("--h", in.h, "function spec on (0, inf)")->required();
    v->add_option("--conj", in.conj, "conjugacy spec")->required();
    v->add_option("--samples", in.samples, "samples per period")->capture_default_str();
    v->add_flag("--fixed-points", in.fixed_points, "also pair fixed points of h with zeros of P");
  }

  // analyze
  CLI::App* analyze = group("analyze", "numerical procedures behind the homogeneity result");
  {
    CLI::App* v = verb(analyze, "theorem1", "homogeneity estimate and the decomposition residual", [&] {
      const Generator psi = check_generator(fn(in.psi));
      const Grid grid = cm.resolve(kSixDecades);
      const HomogeneityEstimate est = infer_homogeneity(psi, grid, in.x_small, cm.scan());
      const double tol = cm.tolerance(1e-9);
      Json j{{"verb", "analyze theorem1"},
             {"a_estimate", est.a},
             {"homogeneity", to_json(est.report)},
             {"linear_generator", est.report.within(tol)},
             {"tol", tol}};
      bool ok = est.report.within(tol);
      if (!in.f0.empty()) {
        const CandidateSolution f0 = make_candidate(fn(in.f0));
        const ResidualReport d = theorem1_decomposition(psi, f0, grid, cm.scan());
        emit_trace(cm, d);
        j["decomposition"] = to_json(d);
        ok = d.within(tol);
      } else {
        emit_trace(cm, est.report);
      }
      j["verdict"] = verdict(ok);
      return Outcome{j, ok};
    });
    v->add_option("--psi", in.psi, "generator spec on (-inf, 0]")->required();
    v->add_option("--f0", in.f0, "candidate solution spec on R");
    v->add_option("--x-small", in.x_small, "abscissa for the slope estimate")->capture_default_str();
  }

  // explore
  CLI::App* explore = group("explore", "searches over Abel-parametrized families");
  auto add_search = [&](CLI::App* v) {
    v->add_option("--coeffs", in.coeffs, "number of trigonometric coefficients")->capture_default_str();
    v->add_option("--amplitude", in.amplitude, "bound on the sum of |coefficients|");
    v->add_option("--restarts", in.restarts, "Nelder-Mead restarts")->capture_default_str();
    v->add_option("--seed", in.seed, "random seed")->capture_default_str();
    v->add_option("--delta", in.delta, "exclusion radius")->capture_default_str();
    v->add_option("--lambda", in.lambda, "exclusion penalty weight")->capture_default_str();
    v->add_option("--max-iter", in.max_iter, "iterations per restart")->capture_default_str();
  };
  auto config = [&](Objective o) {
    SearchConfig c;
    c.objective = o;
    c.grid = cm.resolve(kExplorer);
    c.coefficients = in.coeffs;
    c.amplitude_bound = in.amplitude.value_or(default_amplitude_bound(in.coeffs));
    c.restarts = in.restarts;
    c.seed = in.seed;
    c.delta = in.delta;
    c.lambda = in.lambda;
    c.optimizer.max_iterations = in.max_iter;
    if (cm.tol) c.verdict_threshold = *cm.tol;
    return c;
  };
  auto search_handler = [&](Objective o) {
    return [&, o] {
      const SearchConfig c = config(o);
      const SearchOutcome s = search(c);
      if (!cm.out.empty()) {
        std::ostringstream os;
        os << "restart,iteration,best_value\n";
        for (const auto& row : s.trace) os << row.restart << ',' << row.iteration << ',' << fmt17(row.best_value) << '\n';
        write_atomic(cm.out, os.str());
      }
      Json restarts = Json::array();
      for (const auto& r : s.restarts) {
        restarts.push_back(Json{{"best_residual", std::isfinite(r.best_residual) ? Json(r.best_residual) : Json(nullptr)},
                                {"iterations", r.iterations},
                                {"converged", r.converged}});
      }
      Json j{{"verb", std::string("explore ") + std::string(to_string(o))},
             {"best", Json{{"a", s.best.a}, {"coeffs", s.best.coeffs}}},
             {"best_residual", std::isfinite(s.best_residual) ? Json(s.best_residual) : Json(nullptr)},
             {"best_restart", s.best_restart},
             {"restarts", restarts},
             {"verdict", std::string(to_string(s.verdict))},
             {"verdict_threshold", s.verdict_threshold},
             {"note", s.note},
             {"config", Json{{"coefficients", c.coefficients},
                             {"amplitude_bound", c.amplitude_bound},
                             {"restarts", c.restarts},
                             {"seed", c.seed},
                             {"delta", c.delta},
                             {"lambda", c.lambda},
                             {"grid", c.grid.description()}}}};
      return Outcome{j, true};
    };
  };
  add_search(verb(explore, "eq13", "search for non-homogeneous near-solutions of g = g(id - g) + g(g)", search_handler(Objective::eq13)));
  add_search(verb(explore, "eq12", "search for non-homogeneous branch pairs summing to id", search_handler(Objective::eq12)));
  {
    CLI::App* v = verb(explore, "scan", "residual of g = g(id - g) + g(g) against single-harmonic amplitude", [&] {
      const SearchConfig c = config(Objective::eq13);
      const std::vector<ScanRow> rows = perturbation_scan(in.a, in.amplitudes, c);
      std::ostringstream os;
      os << "amplitude,residual\n";
      Json data = Json::array();
      for (const auto& r : rows) {
        os << fmt17(r.amplitude) << ',' << fmt17(r.residual) << '\n';
        data.push_back(Json{{"amplitude", r.amplitude}, {"residual", r.residual}});
      }
      if (!cm.out.empty()) write_atomic(cm.out, os.str());
      return Outcome{Json{{"verb", "explore scan"}, {"a", in.a}, {"rows", data}, {"grid", c.grid.description()}}, true};
    });
    v->add_option("--a", in.a, "base slope")->required();
    v->add_option("--amplitudes", in.amplitudes, "amplitudes")->delimiter(',')->capture_default_str();
  }

  std::vector<const char*> argv{"qga"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    const int code = app.exit(e, o, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
  const auto it = handlers.find(leaf);
  if (it == handlers.end()) {
    err << "error: incomplete command\n";
    return kExitUsage;
  }
  try {
    const Outcome o = it->second();
    out << o.report.dump(2) << '\n';
    return o.ok ? kExitOk : kExitVerdictFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace qga::cli
