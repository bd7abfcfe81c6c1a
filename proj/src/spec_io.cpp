#include "qga/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include "qga/error.hpp"

namespace qga {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + ": expected a JSON object");
}

void allow_keys(const Json& j, const char* what, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ValidationError(std::string(what) + ": unknown key \"" + key + "\"");
  }
}

double number(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw ValidationError(std::string(what) + ": missing \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(std::string(what) + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const char* what) {
  return j.contains(key) ? number(j, key, what) : fallback;
}

std::vector<double> numbers(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw ValidationError(std::string(what) + ": missing \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_array()) throw ValidationError(std::string(what) + ": \"" + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError(std::string(what) + ": \"" + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::string text(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw ValidationError(std::string(what) + ": missing \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_string()) throw ValidationError(std::string(what) + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

Json interval_to_json(const Interval& i) {
  if (i == Interval::reals()) return "reals";
  if (i == Interval::nonpositive()) return "nonpositive";
  if (i == Interval::nonnegative()) return "nonnegative";
  if (i == Interval::positive()) return "positive";
  Json j;
  j["lo"] = std::isfinite(i.lo) ? Json(i.lo) : Json(nullptr);
  j["hi"] = std::isfinite(i.hi) ? Json(i.hi) : Json(nullptr);
  j["lo_closed"] = i.lo_closed;
  j["hi_closed"] = i.hi_closed;
  return j;
}

Interval interval_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "reals") return Interval::reals();
    if (s == "nonpositive") return Interval::nonpositive();
    if (s == "nonnegative") return Interval::nonnegative();
    if (s == "positive") return Interval::positive();
    throw ValidationError("domain: unknown name \"" + s + "\"");
  }
  require_object(j, "domain");
  allow_keys(j, "domain", {"lo", "hi", "lo_closed", "hi_closed"});
  Interval i;
  auto end = [&](const char* key, double inf) {
    if (!j.contains(key) || j.at(key).is_null()) return inf;
    return number(j, key, "domain");
  };
  i.lo = end("lo", -std::numeric_limits<double>::infinity());
  i.hi = end("hi", std::numeric_limits<double>::infinity());
  auto flag = [&](const char* key) {
    if (!j.contains(key)) return false;
    if (!j.at(key).is_boolean()) throw ValidationError(std::string("domain: \"") + key + "\" must be a boolean");
    return j.at(key).get<bool>();
  };
  i.lo_closed = flag("lo_closed") && std::isfinite(i.lo);
  i.hi_closed = flag("hi_closed") && std::isfinite(i.hi);
  if (!(i.lo <= i.hi)) throw ValidationError("domain: lo must not exceed hi");
  return i;
}

RealFunction decode_body(const Json& j) {
  require_object(j, "function spec");
  const std::string kind = text(j, "kind", "function spec");
  const char* w = "function spec";
  if (kind == "linear") {
    allow_keys(j, w, {"kind", "slope", "domain"});
    return RealFunction::linear(number(j, "slope", w));
  }
  if (kind == "piecewise_linear_slopes") {
    allow_keys(j, w, {"kind", "slope_neg", "slope_pos", "domain"});
    return RealFunction::two_slope(number(j, "slope_neg", w), number(j, "slope_pos", w));
  }
  if (kind == "rational_neg") {
    allow_keys(j, w, {"kind", "k", "domain"});
    return RealFunction::rational_neg(number_or(j, "k", 2.0, w));
  }
  if (kind == "power") {
    allow_keys(j, w, {"kind", "coefficient", "exponent", "domain"});
    return RealFunction::power(number(j, "coefficient", w), number(j, "exponent", w));
  }
  if (kind == "log_sine") {
    allow_keys(j, w, {"kind", "slope", "amplitude", "frequency", "phase", "domain"});
    return RealFunction::log_sine(number(j, "slope", w), number(j, "amplitude", w), number(j, "frequency", w),
                                  number_or(j, "phase", 0.0, w));
  }
  if (kind == "interpolant") {
    allow_keys(j, w, {"kind", "nodes", "values", "direction", "extension", "domain"});
    const Direction d = direction_from_string(text(j, "direction", w));
    const Extension e = j.contains("extension") ? extension_from_string(text(j, "extension", w)) : Extension::error;
    return RealFunction::interpolant(MonotoneInterpolant(numbers(j, "nodes", w), numbers(j, "values", w), d, e));
  }
  if (kind == "piecewise") {
    allow_keys(j, w, {"kind", "neg", "pos", "at_zero", "domain"});
    if (!j.contains("neg") || !j.contains("pos")) throw ValidationError("piecewise spec: needs \"neg\" and \"pos\"");
    std::optional<double> at_zero;
    if (j.contains("at_zero")) at_zero = number(j, "at_zero", w);
    return RealFunction::piecewise(function_from_json(j.at("neg")), function_from_json(j.at("pos")), at_zero);
  }
  if (kind == "composite") {
    allow_keys(j, w, {"kind", "outer", "inner", "domain"});
    if (!j.contains("outer") || !j.contains("inner")) {
      throw ValidationError("composite spec: needs \"outer\" and \"inner\"");
    }
    return RealFunction::composite(function_from_json(j.at("outer")), function_from_json(j.at("inner")));
  }
  if (kind == "conjugate_neg" || kind == "displacement") {
    allow_keys(j, w, {"kind", "of", "domain"});
    if (!j.contains("of")) throw ValidationError(kind + " spec: needs \"of\"");
    const RealFunction of = function_from_json(j.at("of"));
    return kind == "conjugate_neg" ? conjugate_neg(of) : displacement(of);
  }
  if (kind == "abel_branch") {
    allow_keys(j, w, {"kind", "conjugacy", "periodic", "domain"});
    if (!j.contains("conjugacy") || !j.contains("periodic")) {
      throw ValidationError("abel_branch spec: needs \"conjugacy\" and \"periodic\"");
    }
    return build_branch(conjugacy_from_json(j.at("conjugacy")), periodic_from_json(j.at("periodic")));
  }
  throw ValidationError("function spec: unknown kind \"" + kind + "\"");
}

Json encode_body(const RealFunction& f) {
  using RF = RealFunction;
  return std::visit(
      overloaded{
          [](const RF::Linear& b) { return Json{{"kind", "linear"}, {"slope", b.slope}}; },
          [](const RF::TwoSlope& b) {
            return Json{{"kind", "piecewise_linear_slopes"}, {"slope_neg", b.slope_neg}, {"slope_pos", b.slope_pos}};
          },
          [](const RF::RationalNeg& b) { return Json{{"kind", "rational_neg"}, {"k", b.k}}; },
          [](const RF::Power& b) {
            return Json{{"kind", "power"}, {"coefficient", b.coefficient}, {"exponent", b.exponent}};
          },
          [](const RF::LogSine& b) {
            return Json{{"kind", "log_sine"},
                        {"slope", b.slope},
                        {"amplitude", b.amplitude},
                        {"frequency", b.frequency},
                        {"phase", b.phase}};
          },
          [](const RF::Sampled& b) {
            const auto& m = b.interpolant;
            return Json{{"kind", "interpolant"},
                        {"nodes", std::vector<double>(m.nodes().begin(), m.nodes().end())},
                        {"values", std::vector<double>(m.values().begin(), m.values().end())},
                        {"direction", std::string(to_string(m.direction()))},
                        {"extension", std::string(to_string(m.extension()))}};
          },
          [](const RF::Piecewise& b) {
            return Json{{"kind", "piecewise"},
                        {"neg", function_to_json(*b.neg)},
                        {"pos", function_to_json(*b.pos)},
                        {"at_zero", b.at_zero}};
          },
          [](const RF::Composite& b) {
            return Json{{"kind", "composite"}, {"outer", function_to_json(*b.outer)}, {"inner", function_to_json(*b.inner)}};
          },
          [](const RF::ConjugateNeg& b) { return Json{{"kind", "conjugate_neg"}, {"of", function_to_json(*b.of)}}; },
          [](const RF::Displacement& b) { return Json{{"kind", "displacement"}, {"of", function_to_json(*b.of)}}; },
          [](const RF::Opaque& b) {
            if (b.spec_json.empty()) throw ValidationError("function \"" + b.name + "\" has no serialized form");
            return Json::parse(b.spec_json);
          },
      },
      f.body());
}

}  // namespace

RealFunction function_from_json(const Json& j) {
  RealFunction f = decode_body(j);
  if (j.contains("domain")) f = f.restricted(interval_from_json(j.at("domain")));
  return f;
}

Json function_to_json(const RealFunction& f) {
  Json j = encode_body(f);
  j.erase("domain");
  if (!(decode_body(j).domain() == f.domain())) j["domain"] = interval_to_json(f.domain());
  return j;
}

Grid grid_from_json(const Json& j) {
  require_object(j, "grid spec");
  allow_keys(j, "grid spec", {"min", "max", "points", "spacing"});
  const double min = number(j, "min", "grid spec");
  const double max = number(j, "max", "grid spec");
  const double pts = number(j, "points", "grid spec");
  if (!(pts >= 1.0) || pts != std::floor(pts)) throw ValidationError("grid spec: \"points\" must be a positive integer");
  const std::string spacing = j.contains("spacing") ? text(j, "spacing", "grid spec") : "log";
  const auto n = static_cast<std::size_t>(pts);
  if (spacing == "log") return Grid::log_spaced(min, max, n);
  if (spacing == "linear") return Grid::linear(min, max, n);
  throw ValidationError("grid spec: spacing must be \"log\" or \"linear\"");
}

PeriodicFunction periodic_from_json(const Json& j) {
  const char* w = "periodic spec";
  require_object(j, w);
  const double period = number(j, "period", w);
  if (j.contains("samples")) {
    allow_keys(j, w, {"period", "samples"});
    return PeriodicFunction::sampled(period, numbers(j, "samples", w));
  }
  allow_keys(j, w, {"period", "constant", "cos_coeffs", "sin_coeffs"});
  return PeriodicFunction::trigonometric(period, number_or(j, "constant", 0.0, w),
                                         j.contains("cos_coeffs") ? numbers(j, "cos_coeffs", w) : std::vector<double>{},
                                         j.contains("sin_coeffs") ? numbers(j, "sin_coeffs", w) : std::vector<double>{});
}

Json periodic_to_json(const PeriodicFunction& p) {
  if (p.is_sampled()) {
    return Json{{"period", p.period()}, {"samples", std::vector<double>(p.samples().begin(), p.samples().end())}};
  }
  return Json{{"period", p.period()},
              {"constant", p.constant_term()},
              {"cos_coeffs", std::vector<double>(p.cos_coeffs().begin(), p.cos_coeffs().end())},
              {"sin_coeffs", std::vector<double>(p.sin_coeffs().begin(), p.sin_coeffs().end())}};
}

AbelConjugacy conjugacy_from_json(const Json& j) {
  const char* w = "conjugacy spec";
  require_object(j, w);
  if (j.contains("kind")) {
    const std::string kind = text(j, "kind", w);
    if (kind == "log_gauge") {
      allow_keys(j, w, {"kind", "slope", "omega"});
      return AbelConjugacy::log_gauge(number(j, "slope", w), number_or(j, "omega", 1.0, w));
    }
    if (kind != "recursive") throw ValidationError("conjugacy spec: unknown kind \"" + kind + "\"");
  }
  allow_keys(j, w,
             {"kind", "x0", "omega", "seed_nodes", "seed_values", "g_spec", "seed_kind", "seed_profile",
              "iteration_cap"});
  if (!j.contains("g_spec")) throw ValidationError("conjugacy spec: missing \"g_spec\"");
  const RealFunction g = function_from_json(j.at("g_spec"));
  AbelOptions options;
  options.omega = number_or(j, "omega", 1.0, w);
  options.x0 = number_or(j, "x0", 1.0, w);
  if (j.contains("iteration_cap")) {
    const double cap = number(j, "iteration_cap", w);
    if (!(cap >= 1.0 && cap <= 1e9) || cap != std::floor(cap)) {
      throw ValidationError("conjugacy spec: \"iteration_cap\" must be a positive integer");
    }
    options.iteration_cap = static_cast<int>(cap);
  }
  const std::string seed_kind = j.contains("seed_kind") ? text(j, "seed_kind", w) : "";
  if (seed_kind == "log_linear") {
    options.seed = Seed::log_linear();
  } else if (seed_kind == "custom" || j.contains("seed_profile")) {
    if (!j.contains("seed_profile")) throw ValidationError("conjugacy spec: custom seed needs \"seed_profile\"");
    options.seed = Seed::custom(function_from_json(j.at("seed_profile")));
  } else if (seed_kind.empty() || seed_kind == "linear") {
    if (j.contains("seed_nodes") || j.contains("seed_values")) {
      const auto nodes = numbers(j, "seed_nodes", w);
      const auto values = numbers(j, "seed_values", w);
      if (nodes.size() > 2 || values.size() != nodes.size()) {
        options.seed = Seed::custom(
            RealFunction::interpolant(MonotoneInterpolant(nodes, values, Direction::decreasing, Extension::error)));
      }
    }
  } else {
    throw ValidationError("conjugacy spec: unknown seed_kind \"" + seed_kind + "\"");
  }
  return solve_abel(g, options);
}

Json conjugacy_to_json(const AbelConjugacy& c) {
  if (c.is_log_gauge()) return Json{{"kind", "log_gauge"}, {"slope", c.log_gauge_slope()}, {"omega", c.omega()}};
  Json j{{"x0", c.x0()},
         {"omega", c.omega()},
         {"seed_kind", std::string(to_string(c.seed().kind))},
         {"seed_nodes", std::vector<double>{c.fundamental_lo(), c.x0()}},
         {"seed_values", std::vector<double>{c.omega(), 0.0}},
         {"iteration_cap", c.iteration_cap()},
         {"g_spec", function_to_json(c.g())}};
  if (c.seed().kind == Seed::Kind::custom) j["seed_profile"] = function_to_json(*c.seed().profile);
  return j;
}

std::string branch_spec_json(const AbelConjugacy& c, const PeriodicFunction& p) {
  return Json{{"kind", "abel_branch"}, {"conjugacy", conjugacy_to_json(c)}, {"periodic", periodic_to_json(p)}}.dump();
}

Json to_json(const ResidualReport& r) {
  return Json{{"sup", r.sup}, {"argmax", r.argmax}, {"grid", r.grid}, {"points", r.points}};
}

Json to_json(const ConeReport& r) {
  Json j{{"member", r.member}, {"strict", r.strict}, {"first_violation", nullptr}};
  if (r.first_violation) {
    j["first_violation"] =
        Json{{"x", r.first_violation->x}, {"inequality", r.first_violation->inequality}, {"value", r.first_violation->value}};
  }
  return j;
}

void write_trace_csv(std::ostream& out, const ResidualReport& r) {
  out << "x,residual\n";
  if (!r.trace) return;
  char buf[64];
  for (const auto& p : *r.trace) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.residual);
    out << buf;
  }
}

Json load_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[' || arg[first] == '"')) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw ValidationError(std::string("malformed inline JSON: ") + e.what());
    }
  }
  std::ifstream in(arg);
  if (!in) throw ValidationError("cannot open spec file \"" + arg + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in \"" + arg + "\": " + e.what());
  }
}

}  // namespace qga
