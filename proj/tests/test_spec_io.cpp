#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "qga/error.hpp"
#include "qga/solutions.hpp"
#include "qga/spec_io.hpp"

using namespace qga;

namespace {

RealFunction reparse(const RealFunction& f) { return function_from_json(Json::parse(function_to_json(f).dump())); }

void check_identical(const RealFunction& f, const RealFunction& g, const Grid& grid) {
  CHECK(f.domain() == g.domain());
  for (double x : grid.points()) {
    if (!f.domain().contains(x)) continue;
    CHECK(f(x) == g(x));
  }
}

}  // namespace

TEST_CASE("function spec parsing") {
  CHECK(function_from_json(Json::parse(R"({"kind":"linear","slope":0.5})"))(-2.0) == -1.0);
  const RealFunction two = function_from_json(Json::parse(R"({"kind":"piecewise_linear_slopes","slope_neg":0.3,"slope_pos":0.6})"));
  CHECK(two(-1.0) == -0.3);
  CHECK(two(1.0) == 0.6);
  CHECK(function_from_json(Json::parse(R"({"kind":"rational_neg"})")).domain() == Interval::nonpositive());
  const RealFunction restricted = function_from_json(Json::parse(R"({"kind":"linear","slope":2,"domain":"positive"})"));
  CHECK(restricted.domain() == Interval::positive());
  const RealFunction interp = function_from_json(Json::parse(
      R"({"kind":"interpolant","nodes":[0,1,2],"values":[0,1,4],"direction":"increasing","extension":"clamp"})"));
  CHECK(interp(1.5) == 2.5);
  CHECK(interp(9.0) == 4.0);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind":"linear","slope":0.5,"bogus":1})")), ValidationError);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind":"spline"})")), ValidationError);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind":"linear"})")), ValidationError);
  CHECK_THROWS_AS(function_from_json(Json::parse(R"({"kind":"piecewise","neg":{"kind":"rational_neg"}})")), ValidationError);
  CHECK_THROWS_AS(function_from_json(Json::parse("[1,2]")), ValidationError);
}

TEST_CASE("grid and periodic specs") {
  const Grid g = grid_from_json(Json::parse(R"({"min":1,"max":100,"points":3,"spacing":"log"})"));
  REQUIRE(g.size() == 3);
  CHECK(g[1] == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(grid_from_json(Json::parse(R"({"min":0,"max":1,"points":5,"spacing":"linear"})"))[1] == 0.25);
  CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"min":0,"max":1,"points":5,"spacing":"log"})")), Error);
  CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"min":1,"max":2,"points":5,"spacing":"cubic"})")), ValidationError);

  const PeriodicFunction trig = periodic_from_json(
      Json::parse(R"({"period":2,"constant":1,"cos_coeffs":[0.1],"sin_coeffs":[0.2,0.05]})"));
  const PeriodicFunction back = periodic_from_json(Json::parse(periodic_to_json(trig).dump()));
  for (double u = -3.0; u < 3.0; u += 0.37) CHECK(back(u) == trig(u));
  const PeriodicFunction tab = periodic_from_json(Json::parse(R"({"period":1,"samples":[1,2,3]})"));
  CHECK(tab.is_sampled());
  CHECK(periodic_from_json(periodic_to_json(tab))(0.5) == tab(0.5));
}

TEST_CASE("conjugacy specs") {
  const AbelConjugacy lg = conjugacy_from_json(Json::parse(R"({"kind":"log_gauge","slope":0.5,"omega":2})"));
  CHECK(lg.is_log_gauge());
  CHECK(lg.alpha(0.25) == doctest::Approx(4.0));
  const AbelConjugacy rec = conjugacy_from_json(Json::parse(
      R"({"x0":1,"omega":1,"seed_nodes":[0.5,1],"seed_values":[1,0],"g_spec":{"kind":"linear","slope":0.5,"domain":"positive"}})"));
  CHECK(rec.alpha(0.75) == doctest::Approx(0.5));
  CHECK_THROWS_AS(conjugacy_from_json(Json::parse(R"({"x0":1})")), ValidationError);
  CHECK_THROWS_AS(conjugacy_from_json(Json::parse(R"({"kind":"log_gauge","slope":0.5,"extra":0})")), ValidationError);
}

TEST_CASE("function round trip is bit-identical (property)") {
  gen::Rng rng(61);
  const Grid full = default_full_grid();
  const Grid pos = Grid::log_spaced(1e-3, 1e3, 200);
  for (int t = 0; t < 10; ++t) {
    const RealFunction phi = gen::cone_interpolant_neg(rng);
    const CandidateSolution c = corollary1_extend(make_generator(phi, true));
    check_identical(c.f, reparse(c.f), full);
    check_identical(displacement_dual(c).f, reparse(displacement_dual(c).f), full);
    check_identical(rotate_dual(c).f, reparse(rotate_dual(c).f), full);
    const RealFunction two = homogeneous_solution(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)).f;
    check_identical(two, reparse(two), full);
    const RealFunction ls = gen::perturbed_positive(rng);
    check_identical(ls, reparse(ls), pos);
    const RealFunction comp = compose(ls, RealFunction::power(rng.uniform(0.5, 2.0), 1.0));
    check_identical(comp, reparse(comp), pos);

    const AbelConjugacy conj = solve_abel(ls, rng.uniform(0.5, 2.0), 1.0, rng.coin() ? Seed::linear() : Seed::log_linear());
    const AbelConjugacy again = conjugacy_from_json(Json::parse(conjugacy_to_json(conj).dump()));
    for (double x : pos.points()) CHECK(conj.alpha(x) == again.alpha(x));
    const RealFunction h = build_branch(conj, gen::positive_periodic(rng, conj.omega()));
    check_identical(h, reparse(h), Grid::log_spaced(1e-2, 1e2, 40));
  }
}

TEST_CASE("functions without a serialized form are rejected") {
  const RealFunction f = RealFunction::opaque("anon", [](double x) { return x; }, Interval::reals());
  CHECK_THROWS_AS(function_to_json(f), ValidationError);
}

TEST_CASE("report serialization") {
  ScanOptions keep;
  keep.keep_trace = true;
  const ResidualReport r = eq1_residual(RealFunction::two_slope(0.3, 0.9), Grid::explicit_points({-1.0, 0.0, 2.0}), keep);
  const Json j = to_json(r);
  CHECK(j.at("sup").get<double>() == r.sup);
  CHECK(j.at("argmax").get<double>() == r.argmax);
  CHECK(j.at("points").get<std::size_t>() == 3);
  std::ostringstream csv;
  write_trace_csv(csv, r);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x,residual");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma));
    const double v = std::stod(line.substr(comma + 1));
    CHECK(x == (*r.trace)[static_cast<std::size_t>(rows)].x);
    CHECK(v == (*r.trace)[static_cast<std::size_t>(rows)].residual);
    ++rows;
  }
  CHECK(rows == 3);

  const Json cone = to_json(cone_check(RealFunction::linear(2.0), HalfLine::nonnegative, Grid::explicit_points({1.0}), false));
  CHECK(cone.at("member") == false);
  CHECK(cone.at("first_violation").at("inequality") == 2);
}

TEST_CASE("json arguments from text or file") {
  CHECK(load_json_argument(R"({"a":1})").at("a") == 1);
  CHECK(load_json_argument("[1,2]").size() == 2);
  const std::string path = "spec_io_test_arg.json";
  {
    std::ofstream out(path);
    out << R"({"kind":"linear","slope":0.25})";
  }
  CHECK(function_from_json(load_json_argument(path))(4.0) == 1.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json_argument("no_such_file.json"), ValidationError);
  CHECK_THROWS_AS(load_json_argument("{not json"), Error);
}
