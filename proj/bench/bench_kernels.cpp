// Serial reference vs OpenMP kernels on paper-sized inputs.
#include <benchmark/benchmark.h>

#include "dcomp/completion.hpp"
#include "dcomp/forward.hpp"
#include "dcomp/imaging.hpp"

using namespace dcomp;

namespace {

const FarFieldMatrix& full_data() {
  static const FarFieldMatrix F = solve_disk_series(2.0, BoundaryCondition::Dirichlet, 5.0, make_grid(kPi, 128), 40);
  return F;
}

const FarFieldMatrix& limited_data() {
  static const FarFieldMatrix F =
      solve_disk_series(2.0, BoundaryCondition::Dirichlet, 5.0, make_grid(kPi / 2, 128), 40, DataExtent::Limited);
  return F;
}

SamplingGrid grid_of(benchmark::State& state) {
  SamplingGrid g;
  g.resolution = int(state.range(0));
  return g;
}

void BM_dsm_reference(benchmark::State& state) {
  const auto g = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(reference::dsm(full_data(), g, 5.0).values.data());
}

void BM_dsm_serial(benchmark::State& state) {
  const auto g = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(dsm(full_data(), g, 5.0, Exec::Serial).values.data());
}

void BM_dsm_parallel(benchmark::State& state) {
  const auto g = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(dsm(full_data(), g, 5.0, Exec::Parallel).values.data());
}

void BM_fm_reference(benchmark::State& state) {
  const auto g = grid_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(reference::fm(full_data(), g, 5.0).values.data());
}

void BM_fm_serial(benchmark::State& state) {
  const auto g = grid_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(fm(full_data(), g, 5.0, RegularizationSpec::tsvd(1e-8), 0.0, Exec::Serial).values.data());
}

void BM_fm_parallel(benchmark::State& state) {
  const auto g = grid_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(fm(full_data(), g, 5.0, RegularizationSpec::tsvd(1e-8), 0.0, Exec::Parallel).values.data());
}

void nystrom(benchmark::State& state, Exec exec) {
  NystromOptions o;
  o.n_quad = int(state.range(0));
  o.exec = exec;
  const auto grid = make_grid(kPi / 2, 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_nystrom_dirichlet(Boundary::peanut(), 5.0, grid, o, DataExtent::Limited).entries.data());
}
void BM_nystrom_serial(benchmark::State& state) { nystrom(state, Exec::Serial); }
void BM_nystrom_parallel(benchmark::State& state) { nystrom(state, Exec::Parallel); }

void dcie(benchmark::State& state, Exec exec) {
  CompletionConfig c;
  c.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(dc_ie(limited_data(), c).entries.data());
}
void BM_dcie_serial(benchmark::State& state) { dcie(state, Exec::Serial); }
void BM_dcie_parallel(benchmark::State& state) { dcie(state, Exec::Parallel); }

}  // namespace

BENCHMARK(BM_dsm_reference)->Arg(51)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dsm_serial)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dsm_parallel)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fm_reference)->Arg(51)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fm_serial)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fm_parallel)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nystrom_serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nystrom_parallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dcie_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dcie_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
