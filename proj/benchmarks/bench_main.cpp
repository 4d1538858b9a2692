#include <benchmark/benchmark.h>

#include <random>

#include "shapecode/framing.hpp"
#include "shapecode/ghc.hpp"
#include "shapecode/mbdist.hpp"
#include "shapecode/montecarlo.hpp"
#include "shapecode/trees.hpp"
#include "shapecode/v2f.hpp"
#include "shapecode/v2v.hpp"

using namespace shapecode;

namespace {

void BM_Ghc(benchmark::State& state) {
  const AskAlphabet a(16);
  const auto book = balanced_codebook(a, 2);
  const auto target = mb_codeword_pmf(book, lambda_for_rate(a, 3.0));
  for (auto _ : state) benchmark::DoNotOptimize(ghc_dyadic(target));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(target.size()));
}
BENCHMARK(BM_Ghc);

void BM_TreeDp(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_optimal_trees(m, n).total_records());
}
BENCHMARK(BM_TreeDp)->Args({2, 16})->Args({2, 32})->Args({4, 16})->Args({4, 32})->Unit(benchmark::kMillisecond);

void BM_OptimalPmf(benchmark::State& state) {
  const auto set = enumerate_optimal_trees(2, static_cast<int>(state.range(0)));
  const auto& recs = set.optimal(static_cast<int>(state.range(0)));
  const auto book = tree_to_codebook(set, recs[recs.size() / 2]);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_pmf(book, 0.4).energy);
}
BENCHMARK(BM_OptimalPmf)->Arg(8)->Arg(16)->Arg(32);

void BM_EncodeFrame(benchmark::State& state) {
  const FrameConfig cfg(canonical_table1c(), 3600, 10000);
  const auto bits = frame_bits(1, 0, cfg.k());
  for (auto _ : state) benchmark::DoNotOptimize(encode_frame(cfg, bits));
  state.SetItemsProcessed(state.iterations() * cfg.n());
}
BENCHMARK(BM_EncodeFrame);

void BM_DecodeFrame(benchmark::State& state) {
  const FrameConfig cfg(canonical_table1c(), 3600, 10000);
  const auto symbols = encode_frame(cfg, frame_bits(1, 0, cfg.k()));
  for (auto _ : state) benchmark::DoNotOptimize(decode_frame(cfg, symbols));
  state.SetItemsProcessed(state.iterations() * cfg.n());
}
BENCHMARK(BM_DecodeFrame);

}  // namespace

BENCHMARK_MAIN();
