// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "embedrank/code.hpp"
#include "embedrank/embedding.hpp"
#include "embedrank/geometry.hpp"
#include "embedrank/resolve.hpp"

using namespace embedrank;

namespace {

const GoodBlock& ag_good_block() {
  static const GoodBlock gb = *good_block(ag_design(3, 4, 2).design, 0);
  return gb;
}

const LinearCode& big_code() {
  static const LinearCode c = LinearCode::from_rows(good_block(ag_design(4, 4, 3).design, 0)->substructure.incidence(2));
  return c;
}

void BM_rank_packed(benchmark::State& st) {
  const auto m = ag_design(4, 4, 3).design.incidence(2);
  for (auto _ : st) benchmark::DoNotOptimize(rank(m));
}

void BM_rank_generic(benchmark::State& st) {
  const auto m = ag_design(4, 4, 3).design.incidence(2);
  for (auto _ : st) benchmark::DoNotOptimize(rank_generic(m));
}

void BM_wdist_serial(benchmark::State& st) {
  const auto c = LinearCode::from_rows(ag_good_block().substructure.incidence(2));
  for (auto _ : st) benchmark::DoNotOptimize(weight_distribution_serial(c));
}

void BM_wdist_parallel(benchmark::State& st) {
  const auto c = LinearCode::from_rows(ag_good_block().substructure.incidence(2));
  for (auto _ : st) benchmark::DoNotOptimize(weight_distribution(c, static_cast<int>(st.range(0))));
}

void BM_weight128_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(codewords_of_weight_serial(big_code(), 128));
}

void BM_weight128_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(codewords_of_weight(big_code(), 128, static_cast<int>(st.range(0))));
}

void BM_resolutions_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(resolutions_serial(ag_good_block().substructure));
}

void BM_resolutions_parallel(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(resolutions(ag_good_block().substructure, std::nullopt, static_cast<int>(st.range(0))));
  }
}

void BM_search_serial(benchmark::State& st) {
  const auto ag = ag_design(3, 4, 2).design;
  for (auto _ : st) benchmark::DoNotOptimize(embedding_search_serial(ag, 0));
}

void BM_search_parallel(benchmark::State& st) {
  const auto ag = ag_design(3, 4, 2).design;
  for (auto _ : st) benchmark::DoNotOptimize(embedding_search(ag, 0, std::nullopt, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_rank_packed)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_rank_generic)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_wdist_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_wdist_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_weight128_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_weight128_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_resolutions_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_resolutions_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_search_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_search_parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
