#include <benchmark/benchmark.h>

#include <map>

#include "b0lab/catalog.hpp"
#include "b0lab/isoclinism.hpp"
#include "b0lab/multiplier.hpp"

using namespace b0lab;

namespace {

const ExteriorSquareData& phi10_square(unsigned p) {
  static std::map<unsigned, ExteriorSquareData> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, exterior_square(build_phi10(p, family_variants(10, p).front()))).first;
  return it->second;
}

void BM_WedgeClosureSerial(benchmark::State& state) {
  const auto& d = phi10_square(static_cast<unsigned>(state.range(0)));
  const auto mode = state.range(1) ? PairMode::full : PairMode::bicyclic;
  for (auto _ : state) benchmark::DoNotOptimize(commuting_wedge_closure_serial(d, mode).pairs_visited);
}

void BM_WedgeClosureParallel(benchmark::State& state) {
  const auto& d = phi10_square(static_cast<unsigned>(state.range(0)));
  const auto mode = state.range(1) ? PairMode::full : PairMode::bicyclic;
  for (auto _ : state) benchmark::DoNotOptimize(commuting_wedge_closure_parallel(d, mode).pairs_visited);
}

void BM_ExteriorSquare(benchmark::State& state) {
  const auto g = build_phi10(static_cast<unsigned>(state.range(0)), family_variants(10, static_cast<unsigned>(state.range(0))).front());
  for (auto _ : state) benchmark::DoNotOptimize(exterior_square(g).wedge_group.get());
}

void BM_CommutatorPairing(benchmark::State& state) {
  const auto g = build_phi10(static_cast<unsigned>(state.range(0)), family_variants(10, static_cast<unsigned>(state.range(0))).front());
  for (auto _ : state) benchmark::DoNotOptimize(commutator_pairing(g));
}

}  // namespace

BENCHMARK(BM_WedgeClosureSerial)->Args({3, 1})->Args({3, 0})->Args({5, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WedgeClosureParallel)->Args({3, 1})->Args({3, 0})->Args({5, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExteriorSquare)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorPairing)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
