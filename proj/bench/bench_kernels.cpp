#include <benchmark/benchmark.h>

#include "bcover/probes.hpp"
#include "bcover/serial_reference.hpp"

namespace {

using namespace bcover;

const Box kPlanarWindow = Box::planar(0.5, 1.5, -0.5, 0.5);
const Box kTargetWindow = Box::planar(0.05, 8.0, -6.0, 6.0);

void BM_BranchScanSerial(benchmark::State& state) {
  const MapHandle map = MapHandle::paper_f_planar();
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::branch_scan(map, kPlanarWindow, 1e-2, 1e-3));
  }
}

void BM_BranchScanParallel(benchmark::State& state) {
  const MapHandle map = MapHandle::paper_f_planar();
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(branch_scan(map, kPlanarWindow, 1e-2, 1e-3, {}, exec));
  }
}

void BM_HistogramSerial(benchmark::State& state) {
  const MapHandle map = MapHandle::paper_f_planar();
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::preimage_histogram(map, kTargetWindow, 10000, 0));
  }
}

void BM_HistogramParallel(benchmark::State& state) {
  const MapHandle map = MapHandle::paper_f_planar();
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(preimage_histogram(map, kTargetWindow, 10000, 0, exec));
  }
}

void BM_OracleSerial(benchmark::State& state) {
  const MapHandle map = MapHandle::paper_f_planar();
  const Box search = Box::planar(0.01, 6.0, -4.0, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::brute_preimage_oracle(map, {2.0, 0.5}, search, 1e-2, 0.1));
  }
}

void BM_OracleParallel(benchmark::State& state) {
  const MapHandle map = MapHandle::paper_f_planar();
  const Box search = Box::planar(0.01, 6.0, -4.0, 4.0);
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_preimage_oracle(map, {2.0, 0.5}, search, 1e-2, 0.1, exec));
  }
}

void BM_GridNormsSerial(benchmark::State& state) {
  const MapHandle map = MapHandle::remark();
  const Box box = Box::cube(-0.5, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::grid_norms(map, box, 2e-2));
  }
}

void BM_GridNormsParallel(benchmark::State& state) {
  const MapHandle map = MapHandle::remark();
  const Grid grid(Box::cube(-0.5, 0.5), 2e-2);
  const Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_norms(map, grid, exec));
  }
}

}  // namespace

BENCHMARK(BM_BranchScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BranchScanParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridNormsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridNormsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
