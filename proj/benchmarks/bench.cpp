#include <benchmark/benchmark.h>

#include <random>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/ef_feasibility.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/geometry.hpp"
#include "fairdiv/oracle.hpp"

using namespace fairdiv;

namespace {

InstancePtr random_instance(std::uint64_t seed, std::size_t n, std::size_t t, std::int64_t m_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> val(1, 20), cnt(0, m_hi);
  std::vector<AdditiveValuation> vals;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(t);
    for (auto& x : v) x = Rational(val(rng));
    vals.emplace_back(std::move(v));
  }
  std::vector<std::int64_t> m(t);
  for (auto& x : m) x = cnt(rng);
  return make_instance(ItemVector(std::move(m)), std::move(vals));
}

const AlgorithmOptions kFast{false};

void BM_CheckEfx(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = random_instance(1, n, 2, 40);
  const auto alloc = allocate_two_types(inst, kFast).allocation;
  for (auto _ : state) benchmark::DoNotOptimize(check_efx(alloc));
}
BENCHMARK(BM_CheckEfx)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_TwoTypes(benchmark::State& state) {
  const auto inst = random_instance(2, 6, 2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(allocate_two_types(inst, kFast));
}
BENCHMARK(BM_TwoTypes)->Arg(10)->Arg(30)->Arg(100)->Arg(300);

void BM_TwoTypesGeometric(benchmark::State& state) {
  const auto inst = random_instance(3, 5, 2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(allocate_two_types_geometric(inst, kFast));
}
BENCHMARK(BM_TwoTypesGeometric)->Arg(8)->Arg(30);

void BM_IdenticalPrefs(benchmark::State& state) {
  const auto inst = make_instance(ItemVector{state.range(0), state.range(0), state.range(0)},
                                  {AdditiveValuation{9, 5, 1}, AdditiveValuation{7, 3, 2}, AdditiveValuation{4, 4, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(allocate_identical_prefs(inst, kFast));
}
BENCHMARK(BM_IdenticalPrefs)->Arg(10)->Arg(100);

void BM_ScanMinR(benchmark::State& state) {
  const std::vector<AdditiveValuation> pair{AdditiveValuation{2, 1}, AdditiveValuation{1, 2}};
  const std::vector<AdditiveValuation> triple{AdditiveValuation{5, 1}, AdditiveValuation{1, 4},
                                              AdditiveValuation{1, 1}};
  const auto& vals = state.range(0) == 2 ? pair : triple;
  for (auto _ : state) benchmark::DoNotOptimize(scan_min_r(vals, 50));
}
BENCHMARK(BM_ScanMinR)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OracleEfx(benchmark::State& state) {
  const auto inst = random_instance(4, 3, 2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exists_fair(inst, Criterion::efx));
}
BENCHMARK(BM_OracleEfx)->Arg(4)->Arg(8);

void BM_OracleCount(benchmark::State& state) {
  const auto inst = make_instance(ItemVector{state.range(0), state.range(0)},
                                  {AdditiveValuation{3, 1}, AdditiveValuation{1, 3}, AdditiveValuation{2, 2}});
  for (auto _ : state) {
    auto it = enumerate_complete(inst);
    std::uint64_t total = 0;
    while (it.next()) ++total;
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_OracleCount)->Arg(4)->Arg(8);

}  // namespace
BENCHMARK_MAIN();
