#include <benchmark/benchmark.h>

#include "lensdepth/datasets.hpp"
#include "lensdepth/depth.hpp"
#include "lensdepth/reduction.hpp"

namespace ld = lensdepth;

static void BM_BuildGraph(benchmark::State& state) {
  const auto pts = ld::spiral(static_cast<std::size_t>(state.range(0))).without_labels();
  for (auto _ : state) benchmark::DoNotOptimize(ld::build_fermat_graph(pts, 7.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildGraph)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_BuildGraphKnn(benchmark::State& state) {
  const auto pts = ld::spiral(1000).without_labels();
  const ld::FermatOptions opt{.approx_knn_edges = static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ld::build_fermat_graph(pts, 7.0, opt));
}
BENCHMARK(BM_BuildGraphKnn)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_ScoreQuery(benchmark::State& state) {
  const auto train = ld::two_moons(static_cast<std::size_t>(state.range(0)), 0.07, 1);
  const auto scorer = ld::fit(train, {});
  const auto queries = ld::two_moons(256, 0.2, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ld::score(scorer, queries.row(i)));
    i = (i + 1) % queries.size();
  }
}
BENCHMARK(BM_ScoreQuery)->Arg(500)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BM_KMeanCenter(benchmark::State& state) {
  const auto pts = ld::spiral(2000).without_labels();
  for (auto _ : state)
    benchmark::DoNotOptimize(ld::reduce_kmean_center(pts, static_cast<std::size_t>(state.range(0)), 0, 100));
}
BENCHMARK(BM_KMeanCenter)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
