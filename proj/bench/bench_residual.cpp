#include <benchmark/benchmark.h>

#include <omp.h>

#include "qga/abel.hpp"
#include "qga/solutions.hpp"
#include "qga/verify.hpp"

namespace {

qga::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? qga::Execution::serial : qga::Execution::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp x" + std::to_string(omp_get_max_threads()));
}

const qga::CandidateSolution& extension() {
  static const qga::CandidateSolution c =
      qga::corollary1_extend(qga::make_generator(qga::RealFunction::rational_neg(), true));
  return c;
}

void bm_eq1_residual(benchmark::State& state) {
  const qga::Grid grid = qga::default_full_grid();
  const qga::ScanOptions opts{mode(state), false};
  for (auto _ : state) benchmark::DoNotOptimize(qga::eq1_residual(extension().f, grid, opts).sup);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
  label(state);
}

void bm_lemma_residuals(benchmark::State& state) {
  const qga::Grid grid = qga::default_positive_grid();
  const qga::ScanOptions opts{mode(state), false};
  for (auto _ : state) benchmark::DoNotOptimize(qga::lemma_residuals(extension(), grid, opts).max_sup());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
  label(state);
}

void bm_abel_residual(benchmark::State& state) {
  const qga::Grid grid = qga::abel_default_grid();
  const qga::AbelConjugacy c =
      qga::solve_abel(qga::RealFunction::linear(0.5, qga::Interval::positive()));
  const qga::ScanOptions opts{mode(state), false};
  for (auto _ : state) benchmark::DoNotOptimize(qga::abel_residual(c, grid, opts).sup);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
  label(state);
}

void bm_eq13_residual(benchmark::State& state) {
  const qga::Grid grid = qga::Grid::log_spaced(1e-3, 1e3, 4096);
  const qga::RealFunction g =
      qga::RealFunction::log_sine(0.5, 0.05, 1.0, 0.0, qga::Interval::positive());
  const qga::ScanOptions opts{mode(state), false};
  for (auto _ : state) benchmark::DoNotOptimize(qga::eq13_residual(g, grid, opts).sup);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
  label(state);
}

}  // namespace

BENCHMARK(bm_eq1_residual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_lemma_residuals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_abel_residual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_eq13_residual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
