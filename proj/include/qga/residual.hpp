#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qga/grid.hpp"

namespace qga {

enum class Execution { serial, parallel };

struct TracePoint {
  double x;
  double residual;  ///< signed pointwise defect
};

/// Sup-norm defect of an equation over a grid.
///
/// `sup` is the maximum of |residual| over the trace; `argmax` the smallest
/// grid point attaining it.
struct ResidualReport {
  double sup = 0.0;
  double argmax = 0.0;
  std::optional<std::vector<TracePoint>> trace;
  std::string grid;
  std::size_t points = 0;

  bool within(double tol) const { return sup <= tol; }
};

struct ScanOptions {
  Execution execution = Execution::parallel;
  bool keep_trace = false;
};

using Pointwise = std::function<double(double)>;

/// Evaluates `pointwise` at every grid point and reduces to a report.
///
/// Both execution modes compute identical per-point values and use the same
/// ordered reduction, so their reports are bit-identical. A throwing or
/// non-finite evaluation is rethrown as DomainError tagged with the grid point
/// (the smallest failing one in either mode).
ResidualReport scan_residual(const Grid& grid, const Pointwise& pointwise, const ScanOptions& options = {});

/// Ordered reduction of precomputed residuals at `xs` (same rules as scan_residual).
ResidualReport reduce_residual(std::span<const double> xs, std::span<const double> values, std::string grid,
                               bool keep_trace);

namespace kernels {

/// Serial reference kernel.
std::vector<double> evaluate_serial(std::span<const double> xs, const Pointwise& fn);
/// OpenMP kernel; falls back to serial when already inside a parallel region.
std::vector<double> evaluate_parallel(std::span<const double> xs, const Pointwise& fn);
/// max |v|, ties broken by smaller index.
std::size_t argmax_abs(std::span<const double> values);

}  // namespace kernels

}  // namespace qga
