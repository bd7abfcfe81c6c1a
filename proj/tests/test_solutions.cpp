#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "qga/error.hpp"
#include "qga/solutions.hpp"

using namespace qga;

namespace {

constexpr double kClosedFormSup = 1e-12;

RealFunction neg_linear(double a) { return RealFunction::linear(a, Interval::nonpositive()); }

}  // namespace

TEST_CASE("generator validation") {
  CHECK(make_generator(neg_linear(0.4), true).strict());
  CHECK_THROWS_AS(make_generator(neg_linear(1.5)), ValidationError);
  CHECK_FALSE(check_generator(neg_linear(1.5)).validation.member);
  CHECK_THROWS_AS(make_generator(RealFunction::identity(Interval::nonpositive()), true), ValidationError);
  CHECK_NOTHROW(make_generator(RealFunction::identity(Interval::nonpositive()), false));
}

TEST_CASE("functional equation residual examples") {
  const Grid grid = default_full_grid();
  CHECK(eq1_residual(make_candidate(RealFunction::linear(0.5)).f, grid).sup <= kClosedFormSup);
  CHECK(eq1_residual(RealFunction::linear(-1.7), grid).sup <= 1e-9);
  CHECK(eq1_residual(RealFunction::linear(0.0), grid).sup == 0.0);
  CHECK(eq1_residual(homogeneous_solution(0.3, 0.6).f, grid).sup <= kClosedFormSup);

  const RealFunction f = corollary1_extend(make_generator(RealFunction::rational_neg())).f;
  // f(-1) = -1/3, f(2/3) = 5/12; f(1) = 2/3, f(-2/3) = -1/4.
  CHECK(std::abs(eq1_pointwise(f, 1.0)) <= 1e-15);
  for (double x : {-3.0, -0.25, 0.5, 4.0}) {
    CHECK(f(x) == doctest::Approx(oracle::piecewise_example(x)).epsilon(1e-14));
  }
}

TEST_CASE("two-slope residual matches an independent oracle") {
  gen::Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const double a = rng.uniform(-0.5, 1.5);
    const double b = rng.uniform(-0.5, 1.5);
    const RealFunction f = RealFunction::two_slope(a, b);
    for (double x : {-7.5, -1.0, -0.001, 0.0, 0.3, 2.0, 1e3}) {
      const double expect = oracle::eq1_lhs_two_slope(a, b, x) - oracle::eq1_rhs_two_slope(a, b, x);
      CHECK(std::abs(eq1_pointwise(f, x) - expect) <= 1e-12 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("domain escapes are reported") {
  // f(-1) + 1 = 2/3 lies outside the domain of the negative branch.
  const RealFunction g = RealFunction::rational_neg();
  CHECK_THROWS_AS(eq1_pointwise(g, 1.0), DomainError);
  CHECK_THROWS_AS(eq1_residual(g, default_full_grid()), DomainError);
}

TEST_CASE("commutator pair examples") {
  const LemmaResiduals h = lemma_residuals(homogeneous_solution(0.3, 0.6));
  CHECK(h.first.sup <= 1e-15 * 1e6);
  CHECK(h.second.sup <= 1e-15 * 1e6);
  gen::Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    const LemmaResiduals r = lemma_residuals(corollary1_extend(make_generator(gen::cone_interpolant_neg(rng), true)));
    CHECK(r.first.sup == 0.0);
    CHECK(r.second.sup == 0.0);
  }
}

TEST_CASE("extension constructor examples") {
  const CandidateSolution lin = corollary1_extend(make_generator(neg_linear(0.3), true));
  CHECK(lin.f(2.0) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(lin.f(-2.0) == doctest::Approx(-0.6).epsilon(1e-15));
  CHECK(lin.provenance == Provenance::corollary1);
  CHECK(lin.warnings.empty());

  const CandidateSolution weak = corollary1_extend(make_generator(RealFunction::identity(Interval::nonpositive())));
  CHECK_FALSE(weak.warnings.empty());
  CHECK(weak.f(5.0) == 0.0);
}

TEST_CASE("dualities on homogeneous solutions") {
  const CandidateSolution f = homogeneous_solution(0.3, 0.6);
  const CandidateSolution d = displacement_dual(f);
  CHECK(d.f(-1.0) == doctest::Approx(-0.7));
  CHECK(d.f(1.0) == doctest::Approx(0.4));
  CHECK(eq1_residual(d.f).sup <= kClosedFormSup);
  const CandidateSolution r = rotate_dual(f);
  CHECK(r.f(-1.0) == doctest::Approx(-0.6));
  CHECK(r.f(1.0) == doctest::Approx(0.3));
  const CandidateSolution lin = homogeneous_solution(0.5, 0.5);
  CHECK(rotate_dual(lin).f(3.0) == lin.f(3.0));
  CHECK(displacement_dual(lin).f(3.0) == 1.5);
  CHECK_THROWS_AS(homogeneous_solution(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(homogeneous_solution(0.5, 1.0), ValidationError);
}

TEST_CASE("homogeneous (a, 1-a) agrees with the extension constructor") {
  const CandidateSolution h = homogeneous_solution(0.3, 0.7);
  const CandidateSolution c = corollary1_extend(make_generator(neg_linear(0.3), true));
  for (double x : default_full_grid().points()) CHECK(h.f(x) == doctest::Approx(c.f(x)).epsilon(1e-15));
}

TEST_CASE("solve tolerance depends on the body") {
  gen::Rng rng(23);
  CHECK(solve_tolerance(RealFunction::linear(0.5)) == kSolveTolClosedForm);
  CHECK(solve_tolerance(gen::cone_interpolant_neg(rng)) == kSolveTolSampled);
}

namespace {

CandidateSolution perturbed_candidate(gen::Rng& rng) {
  const bool linear_neg = rng.coin();
  RealFunction neg = linear_neg ? neg_linear(rng.uniform(0.2, 0.8)) : gen::cone_interpolant_neg(rng);
  return make_candidate(RealFunction::piecewise(neg, gen::perturbed_positive(rng).restricted(Interval::positive()), 0.0));
}

}  // namespace

TEST_CASE("residual vanishes iff both commutators vanish (property)") {
  gen::Rng rng(24);
  int solutions = 0;
  int non_solutions = 0;
  for (int t = 0; t < 24; ++t) {
    CandidateSolution f = t % 2 == 0 ? corollary1_extend(make_generator(gen::cone_interpolant_neg(rng), true))
                                     : perturbed_candidate(rng);
    const double tol = solve_tolerance(f.f);
    const bool eq1_ok = eq1_residual(f.f).within(tol);
    const bool commutators_ok = lemma_residuals(f).max_sup() <= tol;
    CHECK(eq1_ok == commutators_ok);
    (eq1_ok ? solutions : non_solutions) += 1;
  }
  CHECK(solutions == 12);
  CHECK(non_solutions == 12);
}

TEST_CASE("extension output stays in the cone and solves (property)") {
  gen::Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const CandidateSolution f = corollary1_extend(make_generator(gen::cone_interpolant_neg(rng), true));
    CHECK(f.cone.member);
    CHECK(f.cone.strict);
    CHECK(eq1_residual(f.f).sup <= kSolveTolClosedForm);
    const Grid neg = default_negative_grid();
    for (double x : neg.points()) CHECK(f.f(x) == f.generator.branch(x));
  }
}

TEST_CASE("rotation flips the pointwise residual exactly (property)") {
  gen::Rng rng(26);
  const Grid grid = default_full_grid();
  for (int t = 0; t < 8; ++t) {
    const CandidateSolution f = t % 2 == 0 ? perturbed_candidate(rng)
                                           : corollary1_extend(make_generator(gen::cone_interpolant_neg(rng), true));
    const CandidateSolution r = rotate_dual(f);
    for (double x : grid.points()) CHECK(eq1_pointwise(r.f, x) == -eq1_pointwise(f.f, -x));
  }
}

TEST_CASE("displacement dual swaps the commutators (property)") {
  gen::Rng rng(27);
  ScanOptions keep;
  keep.keep_trace = true;
  for (int t = 0; t < 8; ++t) {
    const CandidateSolution f = perturbed_candidate(rng);
    const LemmaResiduals a = lemma_residuals(f, default_positive_grid(), keep);
    const LemmaResiduals b = lemma_residuals(displacement_dual(f), default_positive_grid(), keep);
    REQUIRE(a.first.trace);
    REQUIRE(b.second.trace);
    for (std::size_t i = 0; i < a.first.trace->size(); ++i) {
      CHECK((*b.first.trace)[i].residual == (*a.second.trace)[i].residual);
      CHECK((*b.second.trace)[i].residual == (*a.first.trace)[i].residual);
    }
  }
}

TEST_CASE("report sup equals the trace maximum (property)") {
  gen::Rng rng(28);
  ScanOptions keep;
  keep.keep_trace = true;
  for (int t = 0; t < 5; ++t) {
    const ResidualReport r = eq1_residual(perturbed_candidate(rng).f, default_full_grid(), keep);
    REQUIRE(r.trace);
    double m = 0.0;
    double at = 0.0;
    for (const TracePoint& p : *r.trace) {
      if (std::abs(p.residual) > m) {
        m = std::abs(p.residual);
        at = p.x;
      }
    }
    CHECK(r.sup == m);
    CHECK(r.argmax == at);
    CHECK(r.points == r.trace->size());
  }
}
