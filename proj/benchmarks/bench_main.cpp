#include <benchmark/benchmark.h>

#include "phml/distances.hpp"
#include "phml/filtration.hpp"
#include "phml/generators.hpp"
#include "phml/inclusion.hpp"
#include "phml/oracle.hpp"
#include "phml/persistence.hpp"

namespace {

phml::WeightedGraph bench_graph(int n) {
  phml::Rng rng(1234);
  return phml::random_graph(phml::GraphFamily::kMusicChain, n, n, rng).graph;
}

void BM_AllPairsD1(benchmark::State& state) {
  phml::WeightedGraph g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(phml::all_pairs(g, phml::DistanceKind::kD1));
}
BENCHMARK(BM_AllPairsD1)->Arg(16)->Arg(32)->Arg(48);

void BM_AllPairsD2(benchmark::State& state) {
  phml::WeightedGraph g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(phml::all_pairs(g, phml::DistanceKind::kD2));
}
BENCHMARK(BM_AllPairsD2)->Arg(16)->Arg(32)->Arg(48);

void BM_AllPairsD3(benchmark::State& state) {
  phml::WeightedGraph g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(phml::all_pairs(g, phml::DistanceKind::kD3));
}
BENCHMARK(BM_AllPairsD3)->Arg(16)->Arg(32)->Arg(48);

void BM_BuildFiltration(benchmark::State& state) {
  phml::DistanceMatrix D = phml::all_pairs(
      bench_graph(static_cast<int>(state.range(0))), phml::DistanceKind::kD2);
  for (auto _ : state) benchmark::DoNotOptimize(phml::build_filtration(D));
}
BENCHMARK(BM_BuildFiltration)->Arg(16)->Arg(32)->Arg(48);

void BM_Reduce(benchmark::State& state) {
  phml::Filtration f = phml::build_filtration(phml::all_pairs(
      bench_graph(static_cast<int>(state.range(0))), phml::DistanceKind::kD2));
  for (auto _ : state) benchmark::DoNotOptimize(phml::reduce(f));
}
BENCHMARK(BM_Reduce)->Arg(16)->Arg(24)->Arg(32);

void BM_InjectionEndToEnd(benchmark::State& state) {
  phml::WeightedGraph g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    phml::BarcodeSet b1 =
        phml::barcode_of(phml::all_pairs(g, phml::DistanceKind::kD1));
    phml::BarcodeSet b2 =
        phml::barcode_of(phml::all_pairs(g, phml::DistanceKind::kD2));
    phml::BarcodeSet b3 =
        phml::barcode_of(phml::all_pairs(g, phml::DistanceKind::kD3));
    benchmark::DoNotOptimize(phml::build_injection(b2, b3, b1));
  }
}
BENCHMARK(BM_InjectionEndToEnd)->Arg(16)->Arg(24)->Arg(32);

void BM_BruteForcePair(benchmark::State& state) {
  phml::Rng rng(7);
  phml::WeightedGraph g =
      phml::random_graph(phml::GraphFamily::kRandomConnected, 10, 10, rng)
          .graph;
  for (auto _ : state)
    benchmark::DoNotOptimize(phml::brute_force_all(g, 0, 9));
}
BENCHMARK(BM_BruteForcePair);

}  // namespace

BENCHMARK_MAIN();
