#include <benchmark/benchmark.h>

#include "einhom/curvature.hpp"
#include "einhom/lie_oracle.hpp"
#include "einhom/solvers.hpp"

using namespace einhom;

static void BM_SturmCount(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  RationalPoly f = quartic_build(GroupFamily::Orthogonal, k, k + 1);
  for (auto _ : state) benchmark::DoNotOptimize(sturm_count_positive(f));
}
BENCHMARK(BM_SturmCount)->Arg(3)->Arg(20)->Arg(200);

static void BM_RootRefinement(benchmark::State& state) {
  RationalPoly f = quartic_build(GroupFamily::Symplectic, 5, 7);
  auto ivs = isolate_positive_roots(f);
  for (auto _ : state)
    for (const auto& iv : ivs) benchmark::DoNotOptimize(refine_root(f, iv));
}
BENCHMARK(BM_RootRefinement);

static void BM_TableSweep(benchmark::State& state) {
  auto family = state.range(0) == 0 ? GroupFamily::Orthogonal : GroupFamily::Symplectic;
  auto ks = int_range(3, 20), ls = int_range(1, 20);
  for (auto _ : state) benchmark::DoNotOptimize(table_sweep(family, ks, ls));
}
BENCHMARK(BM_TableSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_OracleReport(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  SpaceSpec spec(GroupFamily::Orthogonal, {k, k, 2}, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_report(spec));
}
BENCHMARK(BM_OracleReport)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ScalarCurvatureField(benchmark::State& state) {
  SpaceSpec spec = SpaceSpec::three_block(GroupFamily::Symplectic, static_cast<int>(state.range(0)), 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(scalar_curvature_field(spec));
}
BENCHMARK(BM_ScalarCurvatureField)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

static void BM_GeneralSolve(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(general_solve(GroupFamily::Orthogonal, s, 3, 4));
}
BENCHMARK(BM_GeneralSolve)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_PlanManyMetrics(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(plan_many_metrics(GroupFamily::Orthogonal, 2));
}
BENCHMARK(BM_PlanManyMetrics)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
