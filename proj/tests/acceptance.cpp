// Acceptance suite: one PASS/FAIL line per criterion.

#include <unistd.h>

#include <chrono>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "qga/abel.hpp"
#include "qga/cli.hpp"
#include "qga/error.hpp"
#include "qga/explorer.hpp"
#include "qga/solutions.hpp"
#include "qga/spec_io.hpp"
#include "qga/verify.hpp"

using namespace qga;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Result {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Criterion 1
Result extension_soundness() {
  const auto t0 = Clock::now();
  const Grid grid = default_full_grid();
  double worst_interp = 0.0;
  double worst_closed = 0.0;
  gen::Rng rng(1001);
  for (int i = 0; i < 100; ++i) {
    const CandidateSolution c = corollary1_extend(make_generator(gen::cone_interpolant_neg(rng), true));
    worst_interp = std::max(worst_interp, eq1_residual(c.f, grid).sup);
  }
  std::vector<RealFunction> closed;
  for (int k = 1; k <= 9; ++k) closed.push_back(RealFunction::linear(0.1 * k, Interval::nonpositive()));
  closed.push_back(RealFunction::rational_neg());
  for (const auto& phi : closed) {
    const CandidateSolution c = corollary1_extend(make_generator(phi, true));
    worst_closed = std::max(worst_closed, eq1_residual(c.f, grid).sup);
  }
  const double t = seconds_since(t0);
  return {worst_interp <= 1e-6 && worst_closed <= 1e-12 && t < 10.0,
          "interpolant sup " + num(worst_interp) + ", closed-form sup " + num(worst_closed) + ", " + num(t) + " s"};
}

// Corpus of solutions and deliberate non-solutions used by criteria 2 and 3.
std::vector<CandidateSolution> corpus() {
  std::vector<CandidateSolution> out;
  gen::Rng rng(2002);
  for (int i = 0; i < 10; ++i) out.push_back(homogeneous_solution(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)));
  for (int i = 0; i < 10; ++i) out.push_back(corollary1_extend(make_generator(gen::cone_interpolant_neg(rng), true)));
  for (int k = 1; k <= 5; ++k) {
    out.push_back(corollary1_extend(make_generator(RealFunction::linear(0.15 * k, Interval::nonpositive()), true)));
  }
  out.push_back(corollary1_extend(make_generator(RealFunction::rational_neg(), true)));
  out.push_back(corollary1_extend(make_generator(RealFunction::rational_neg(3.0), true)));
  for (int i = 0; i < 23; ++i) {
    const double a = rng.uniform(0.2, 0.8);
    const double b = rng.uniform(0.3, 0.7);
    const double amp = 0.1;
    RealFunction pos = RealFunction::log_sine(b, amp, rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28), Interval::nonnegative());
    RealFunction neg = i % 2 == 0 ? RealFunction::linear(a, Interval::nonpositive())
                                  : gen::cone_interpolant_neg(rng);
    out.push_back(make_candidate(RealFunction::piecewise(neg, pos, 0.0)));
  }
  return out;
}

double max_abs_diff(const ResidualReport& a, const ResidualReport& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.trace->size(); ++i) {
    d = std::max(d, std::abs((*a.trace)[i].residual - (*b.trace)[i].residual));
  }
  return d;
}

// Criterion 2
Result exact_dualities(const std::vector<CandidateSolution>& cs) {
  const auto t0 = Clock::now();
  const Grid full = default_full_grid();
  const Grid pos = default_positive_grid();
  const ScanOptions traced{Execution::parallel, true};
  double rot = 0.0;
  double swap = 0.0;
  for (const auto& c : cs) {
    const auto rf = eq1_residual(c.f, full, traced);
    const auto rr = eq1_residual(rotate_dual(c).f, full, traced);
    const auto& tf = *rf.trace;
    const auto& tr = *rr.trace;
    const std::size_t n = tf.size();
    for (std::size_t i = 0; i < n; ++i) {
      // tr[i] is at x, tf[n-1-i] at -x on the symmetric grid.
      rot = std::max(rot, std::abs(std::abs(tr[i].residual) - std::abs(tf[n - 1 - i].residual)));
    }
    const LemmaResiduals lf = lemma_residuals(c, pos, traced);
    const LemmaResiduals ld = lemma_residuals(displacement_dual(c), pos, traced);
    swap = std::max({swap, max_abs_diff(ld.first, lf.second), max_abs_diff(ld.second, lf.first)});
  }
  const double t = seconds_since(t0);
  return {rot <= 1e-12 && swap <= 1e-12 && t < 5.0 && cs.size() == 50,
          std::to_string(cs.size()) + " candidates, rotation defect " + num(rot) + ", swap defect " + num(swap) + ", " +
              num(t) + " s"};
}

// Criterion 3
Result commutator_equivalence(const std::vector<CandidateSolution>& cs) {
  int wrong = 0;
  int solutions = 0;
  int broken = 0;
  for (const auto& c : cs) {
    const double e = eq1_residual(c.f).sup;
    const double l = lemma_residuals(c).max_sup();
    if (l <= 1e-9) {
      ++solutions;
      if (!(e <= 1e-8)) ++wrong;
    }
    if (e >= 1e-3) {
      ++broken;
      if (!(l >= 1e-4)) ++wrong;
    }
  }
  return {wrong == 0 && solutions > 0 && broken > 0,
          std::to_string(solutions) + " commutator-zero, " + std::to_string(broken) + " eq-broken, " +
              std::to_string(wrong) + " misclassified"};
}

// Criterion 4
Result abel_solver() {
  const auto t0 = Clock::now();
  const Grid grid = abel_default_grid();
  struct Case {
    RealFunction g;
    double x0;
  };
  std::vector<Case> cases;
  for (double a : {0.2, 0.5, 0.8}) cases.push_back({RealFunction::linear(a, Interval::positive()), 1.0});
  cases.push_back({displacement(conjugate_neg(RealFunction::rational_neg())).restricted(Interval::positive()), 100.0});
  double res = 0.0;
  double rec = 0.0;
  double gauge = 0.0;
  for (const auto& c : cases) {
    const AbelConjugacy lin = solve_abel(c.g, 1.0, c.x0, Seed::linear());
    const AbelConjugacy log = solve_abel(c.g, 1.0, c.x0, Seed::log_linear());
    res = std::max({res, abel_residual(lin, grid).sup, abel_residual(log, grid).sup});
    const RealFunction rl = reconstruct_g(lin);
    const RealFunction rg = reconstruct_g(log);
    for (double x : grid.points()) {
      const double g = c.g(x);
      const double a = rl(x);
      const double b = rg(x);
      rec = std::max({rec, std::abs(a - g), std::abs(b - g)});
      gauge = std::max(gauge, std::abs(a - b));
    }
  }
  const double t = seconds_since(t0);
  return {res <= 1e-9 && rec <= 1e-9 && gauge <= 1e-9 && t < 5.0,
          "Abel residual " + num(res) + ", reconstruction " + num(rec) + ", gauge " + num(gauge) + ", " + num(t) + " s"};
}

// Criterion 5
Result round_trip() {
  const AbelConjugacy c = solve_abel(RealFunction::linear(0.5, Interval::positive()), 1.0, 1.0, Seed::linear());
  const Grid grid = abel_default_grid();
  gen::Rng rng(5005);
  double rec = 0.0;
  double comm = 0.0;
  for (int i = 0; i < 20; ++i) {
    const PeriodicFunction p = gen::positive_periodic(rng);
    const RealFunction h = build_branch(c, p);
    const PeriodicExtraction e = extract_periodic(h, c, 256);
    const auto samples = e.p.samples();
    for (std::size_t k = 0; k < samples.size(); ++k) {
      rec = std::max(rec, std::abs(samples[k] - p(static_cast<double>(k) / static_cast<double>(samples.size()))));
    }
    comm = std::max(comm, commutator_residual(c.g(), h, grid).sup);
  }
  return {rec <= 1e-8 && comm <= 1e-8, "recovery " + num(rec) + ", commutator " + num(comm)};
}

// Criterion 6
Result abel_homogeneous_closure() {
  const Grid grid = abel_default_grid();
  double shape = 0.0;
  double second = 0.0;
  for (double a : {0.3, 0.5, 0.7}) {
    for (double p : {0.5, 1.0, 2.5}) {
      const Theorem2Result r = theorem2_construct(make_generator(RealFunction::linear(a, Interval::nonpositive()), true),
                                                  PeriodicFunction::constant(1.0, p));
      const RealFunction fp = restrict_pos(r.candidate.f);
      for (double x : grid.points()) {
        shape = std::max(shape, std::abs(fp(x) - oracle::homogeneous_branch(1.0 - a, p, 1.0, x)));
      }
      second = std::max(second, r.second.sup);
    }
  }
  return {shape <= 1e-9 && second <= 1e-9, "branch error " + num(shape) + ", second commutator " + num(second)};
}

// Criterion 7
Result additive_decomposition() {
  gen::Rng rng(7007);
  const Grid grid = Grid::log_spaced(1e-3, 1e3, 256);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double a = std::ldexp(1.0, rng.integer(-4, 4));
    const RealFunction r1 = gen::perturbed_positive(rng);
    const DecompositionPair pair = DecompositionPair::complement(r1, grid);
    worst = std::max(worst, sablik_residual(RealFunction::linear(a, Interval::positive()), pair, grid).sup);
  }
  const RealFunction half = RealFunction::linear(0.5, Interval::positive());
  const DecompositionPair halves(half, half, Grid::explicit_points({2.0}));
  const RealFunction square = RealFunction::power(1.0, 2.0);
  const double at2 = sablik_residual(square, halves, Grid::explicit_points({2.0})).sup;
  return {worst == 0.0 && std::abs(at2 - oracle::square_split_defect(2.0)) <= 1e-12 && oracle::square_split_defect(2.0) == 2.0,
          "linear sup " + num(worst) + ", x^2 at 2: " + num(at2)};
}

// Criterion 8
Result co_vanishing() {
  gen::Rng rng(8008);
  const Grid grid = default_positive_grid();
  int disagreements = 0;
  int both_zero = 0;
  for (int i = 0; i < 30; ++i) {
    RealFunction g = RealFunction::linear(0.5, Interval::positive());
    if (i < 10) {
      g = RealFunction::linear(rng.uniform(0.05, 0.95), Interval::positive());
    } else if (i < 20) {
      g = gen::perturbed_positive(rng);
    } else {
      FamilyPoint p{rng.uniform(0.2, 0.8), {rng.uniform(-0.07, 0.07), rng.uniform(-0.07, 0.07)}};
      g = family_function(p, 1.0);
    }
    const EquivalenceReport r = proposition5_check(g, grid, 1e-8);
    const bool a = r.eq13.sup <= 1e-8;
    const bool b = r.commute.sup <= 1e-8;
    if (a != b) ++disagreements;
    if (a && b) ++both_zero;
  }
  return {disagreements == 0 && both_zero == 10,
          std::to_string(disagreements) + " disagreements, " + std::to_string(both_zero) + " jointly vanishing"};
}

// Criterion 9
Result explorer_evidence() {
  const SearchConfig config;
  const auto t0 = Clock::now();
  const SearchOutcome first = search(config);
  const double t = seconds_since(t0);
  const SearchOutcome second = search(config);
  bool identical = first.trace.size() == second.trace.size() && first.best_residual == second.best_residual;
  for (std::size_t i = 0; identical && i < first.trace.size(); ++i) {
    identical = first.trace[i].restart == second.trace[i].restart &&
                first.trace[i].iteration == second.trace[i].iteration &&
                std::memcmp(&first.trace[i].best_value, &second.trace[i].best_value, sizeof(double)) == 0;
  }
  const bool framed = first.note.find("evidence") != std::string::npos &&
                      first.note.find("neither proves nor refutes") != std::string::npos;
  const bool ok = t < 60.0 && first.best_residual >= 10.0 * config.verdict_threshold && identical && framed &&
                  first.verdict == Verdict::no_candidate;
  return {ok, "best residual " + num(first.best_residual) + " (threshold " + num(config.verdict_threshold) + "), " +
                  num(t) + " s, re-run " + (identical ? "bit-identical" : "DIFFERS") + ", verdict \"" +
                  std::string(to_string(first.verdict)) + "\""};
}

// Criterion 10
Result cli_end_to_end() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("qga_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string f_json = (dir / "f.json").string();
  std::ostringstream out;
  std::ostringstream err;
  const int c1 = cli::run({"verify", "eq1", "--f", R"({"kind":"linear","slope":0.5})", "--grid", "default"}, out, err);
  const int c2 = cli::run({"construct", "corollary1", "--phi", R"({"kind":"rational_neg"})", "--out", f_json}, out, err);
  const int c3 = cli::run({"verify", "eq1", "--f", f_json}, out, err);
  const int c4 = cli::run({"verify", "eq13", "--g", R"({"kind":"linear","slope":2.0})"}, out, err);

  gen::Rng rng(1010);
  const CandidateSolution built = corollary1_extend(make_generator(gen::cone_interpolant_neg(rng), true));
  const RealFunction back = function_from_json(Json::parse(function_to_json(built.f).dump()));
  bool identical = true;
  for (double x : default_full_grid().points()) {
    const double a = built.f(x);
    const double b = back(x);
    identical = identical && std::memcmp(&a, &b, sizeof(double)) == 0;
  }
  fs::remove_all(dir);
  return {c1 == 0 && c2 == 0 && c3 == 0 && c4 == 2 && identical,
          "exit codes " + std::to_string(c1) + "," + std::to_string(c2) + "," + std::to_string(c3) + "," +
              std::to_string(c4) + ", round trip " + (identical ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  const std::vector<CandidateSolution> cs = corpus();
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"extension soundness", extension_soundness},
      {"exact dualities", [&] { return exact_dualities(cs); }},
      {"commutator equivalence", [&] { return commutator_equivalence(cs); }},
      {"Abel solver", abel_solver},
      {"periodic round-trip", round_trip},
      {"homogeneous closure of the Abel construction", abel_homogeneous_closure},
      {"additive decomposition checks", additive_decomposition},
      {"co-vanishing of the two residuals", co_vanishing},
      {"explorer evidence run", explorer_evidence},
      {"CLI end-to-end", cli_end_to_end},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Result r{false, ""};
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s\n", r.pass ? "PASS" : "FAIL", index, name, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
