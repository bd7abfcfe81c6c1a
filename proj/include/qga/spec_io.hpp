#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qga/abel.hpp"
#include "qga/funcalg.hpp"
#include "qga/periodic.hpp"
#include "qga/residual.hpp"

namespace qga {

using Json = nlohmann::json;

/// Function specs.
///
/// Kinds: linear, piecewise_linear_slopes, rational_neg, interpolant,
/// piecewise, composite, plus conjugate_neg, displacement, power, log_sine and
/// abel_branch. An optional "domain" key ("reals", "nonpositive",
/// "nonnegative", "positive" or {"lo", "hi", "lo_closed", "hi_closed"} with
/// null for an infinite end) restricts the natural domain of the kind.
/// Unknown keys throw ValidationError.
RealFunction function_from_json(const Json& j);
/// Throws ValidationError for bodies without a serialized form.
Json function_to_json(const RealFunction& f);

/// {"min", "max", "points", "spacing": "log" | "linear"}
Grid grid_from_json(const Json& j);

/// {"period", "constant", "cos_coeffs", "sin_coeffs"} or {"period", "samples"}.
PeriodicFunction periodic_from_json(const Json& j);
Json periodic_to_json(const PeriodicFunction& p);

/// {"x0", "omega", "seed_nodes", "seed_values", "g_spec"} with optional
/// "seed_kind", "seed_profile" and "iteration_cap"; or
/// {"kind": "log_gauge", "slope", "omega"}.
AbelConjugacy conjugacy_from_json(const Json& j);
Json conjugacy_to_json(const AbelConjugacy& c);

/// Serialized {"kind": "abel_branch", ...} spec of build_branch(c, p).
std::string branch_spec_json(const AbelConjugacy& c, const PeriodicFunction& p);

Json to_json(const ResidualReport& r);
Json to_json(const ConeReport& r);

/// Header `x,residual`, 17 significant digits.
void write_trace_csv(std::ostream& out, const ResidualReport& r);

/// Parses `text` as JSON, or if it does not start with '{' or '[', reads it as a file path.
Json load_json_argument(const std::string& text);

}  // namespace qga
