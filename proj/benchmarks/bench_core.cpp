#include <benchmark/benchmark.h>

#include "latineq/calculus.hpp"
#include "latineq/certifiers.hpp"
#include "latineq/extremal.hpp"

using namespace latineq;

namespace {

SparseFunction sample(std::size_t n, std::size_t window) {
  FuzzConfig config;
  config.n = n;
  config.window = window;
  config.indicator_fraction = 0;
  config.density = 0.7;
  return fuzz_sample(config, 1);
}

void BM_CheckGn(benchmark::State& state) {
  const auto f = sample(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_gn(f));
  state.SetComplexityN(static_cast<long>(f.entries().size()));
}
BENCHMARK(BM_CheckGn)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_CheckGnCuboid(benchmark::State& state) {
  const Coord side = state.range(0);
  const auto f = indicator(Cuboid({{0, side - 1}, {0, side - 1}, {0, side - 1}}).to_set());
  for (auto _ : state) benchmark::DoNotOptimize(check_gn(f));
}
BENCHMARK(BM_CheckGnCuboid)->Arg(4)->Arg(8)->Arg(16);

void BM_CheckLogBl(benchmark::State& state) {
  const auto f = sample(3, 8).abs();
  for (auto _ : state) benchmark::DoNotOptimize(check_log_bl(f, Rational(2), kDefaultTolerance, true));
}
BENCHMARK(BM_CheckLogBl);

void BM_PartialL1(benchmark::State& state) {
  const auto f = sample(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diff_l1(f));
}
BENCHMARK(BM_PartialL1)->RangeMultiplier(2)->Range(4, 64);

void BM_Enumerate(benchmark::State& state) {
  EnumerationConfig config;
  config.n = 2;
  config.box_side = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_rigidity(config));
}
BENCHMARK(BM_Enumerate)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Anneal(benchmark::State& state) {
  AnnealConfig config;
  config.size = 16;
  config.iterations = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(anneal_sets(config));
}
BENCHMARK(BM_Anneal)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Fuzz(benchmark::State& state) {
  FuzzConfig config;
  config.count = 1000;
  config.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fuzz(config));
}
BENCHMARK(BM_Fuzz)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
