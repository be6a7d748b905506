#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "polywave/factorization.hpp"
#include "polywave/filterbank.hpp"
#include "polywave/subdivision.hpp"
#include "polywave/symbols.hpp"

using namespace polywave;

static void BM_Symbol(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a_symbol({order, 1.0, 0}));
}
BENCHMARK(BM_Symbol)->Arg(2)->Arg(4)->Arg(8);

static void BM_Mask(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(refinement_mask({order, 1.0, 0}));
}
BENCHMARK(BM_Mask)->Arg(2)->Arg(4)->Arg(6);

static void BM_FatherTabulation(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tabulate_father_raw(2, 1.0, 0, L));
}
BENCHMARK(BM_FatherTabulation)->Arg(6)->Arg(8)->Arg(10);

static void BM_Analyze1D(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const FilterBankPlan plan = FilterBankPlan::create(2, 1.0, 0, 4);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> sig(n);
  for (double& v : sig) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_1d(sig, plan));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Analyze1D)->Arg(256)->Arg(4096)->Arg(65536);

static void BM_Analyze2D(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  ImageBuffer img;
  img.width = side;
  img.height = side;
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  img.pixels.resize(static_cast<std::size_t>(side) * side);
  for (double& p : img.pixels) p = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_2d(img, 2, 2));
}
BENCHMARK(BM_Analyze2D)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
