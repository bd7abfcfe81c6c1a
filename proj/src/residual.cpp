#include "qga/residual.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include <omp.h>

#include "qga/error.hpp"

namespace qga {

namespace {

[[noreturn]] void rethrow_at(double x, std::exception_ptr err) {
  std::ostringstream os;
  os.precision(17);
  os << "evaluation failed at grid point x=" << x;
  try {
    std::rethrow_exception(err);
  } catch (const std::exception& e) {
    os << ": " << e.what();
  }
  throw DomainError(os.str(), x);
}

double checked(const Pointwise& fn, double x) {
  const double r = fn(x);
  if (!std::isfinite(r)) throw DomainError("non-finite residual", x);
  return r;
}

}  // namespace

namespace kernels {

std::vector<double> evaluate_serial(std::span<const double> xs, const Pointwise& fn) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    try {
      out[i] = checked(fn, xs[i]);
    } catch (...) {
      rethrow_at(xs[i], std::current_exception());
    }
  }
  return out;
}

std::vector<double> evaluate_parallel(std::span<const double> xs, const Pointwise& fn) {
  if (omp_in_parallel()) return evaluate_serial(xs, fn);
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
  std::vector<double> out(xs.size());
  std::ptrdiff_t failed = n;
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = checked(fn, xs[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(qga_residual_error)
      if (i < failed) {
        failed = i;
        error = std::current_exception();
      }
    }
  }
  if (failed < n) rethrow_at(xs[static_cast<std::size_t>(failed)], error);
  return out;
}

std::size_t argmax_abs(std::span<const double> values) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

}  // namespace kernels

ResidualReport scan_residual(const Grid& grid, const Pointwise& pointwise, const ScanOptions& options) {
  const auto xs = grid.points();
  const std::vector<double> values = options.execution == Execution::parallel
                                         ? kernels::evaluate_parallel(xs, pointwise)
                                         : kernels::evaluate_serial(xs, pointwise);
  return reduce_residual(xs, values, grid.description(), options.keep_trace);
}

ResidualReport reduce_residual(std::span<const double> xs, std::span<const double> values, std::string grid,
                               bool keep_trace) {
  if (xs.size() != values.size() || xs.empty()) throw ValidationError("reduce_residual: size mismatch or empty");
  ResidualReport report;
  report.grid = std::move(grid);
  report.points = xs.size();
  const std::size_t k = kernels::argmax_abs(values);
  report.sup = std::abs(values[k]);
  report.argmax = xs[k];
  if (keep_trace) {
    std::vector<TracePoint> trace(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) trace[i] = {xs[i], values[i]};
    report.trace = std::move(trace);
  }
  return report;
}

}  // namespace qga
