#include <benchmark/benchmark.h>

#include <cmath>

#include "gmtlab/covering.hpp"
#include "gmtlab/generators.hpp"
#include "gmtlab/incidence.hpp"
#include "gmtlab/measures.hpp"
#include "gmtlab/parallel.hpp"
#include "gmtlab/tubes.hpp"

namespace {

// Exact-mode pencil statistics; the target is n = 5000 well under a minute on one worker.
void BM_SpannedLineStats(benchmark::State& state) {
  gmt::set_worker_count(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const gmt::DiscreteSet p = gmt::gen_uniform(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gmt::spanned_line_stats(p).line_count);
  state.SetComplexityN(state.range(0));
  gmt::set_worker_count(0);
}
BENCHMARK(BM_SpannedLineStats)->Arg(500)->Arg(1000)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SpannedLineStatsGrid(benchmark::State& state) {
  const gmt::DiscreteSet g = gmt::gen_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gmt::spanned_line_stats(g).line_count);
}
BENCHMARK(BM_SpannedLineStatsGrid)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CoveringNumber(benchmark::State& state) {
  const gmt::DiscreteSet s = gmt::gen_random_delta_s_set(1.5, 0x1.0p-14, 3);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gmt::covering_number(s, level));
  state.counters["points"] = static_cast<double>(s.size());
}
BENCHMARK(BM_CoveringNumber)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMicrosecond);

void BM_BoxDimension(benchmark::State& state) {
  const gmt::DiscreteSet s = gmt::gen_ifs(gmt::four_corner(), std::pow(4.0, -7));
  for (auto _ : state) benchmark::DoNotOptimize(gmt::box_dimension(s).slope);
}
BENCHMARK(BM_BoxDimension)->Unit(benchmark::kMillisecond);

void BM_HeaviestTube(benchmark::State& state) {
  const gmt::WeightedMeasure nu =
      gmt::WeightedMeasure::uniform(gmt::gen_random_delta_s_set(1.5, 0x1.0p-12, 5));
  const double width = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gmt::heaviest_tube(nu, {-0.5, 0.5}, width).mass);
  state.counters["points"] = static_cast<double>(nu.size());
}
BENCHMARK(BM_HeaviestTube)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_UniformTubeFamily(benchmark::State& state) {
  const double r = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gmt::uniform_tube_family(r).tubes.size());
}
BENCHMARK(BM_UniformTubeFamily)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
