#include <benchmark/benchmark.h>

#include "lowbmm/datagen.hpp"
#include "lowbmm/leap_shift.hpp"
#include "lowbmm/mallows.hpp"
#include "lowbmm/perm.hpp"
#include "lowbmm/sampler.hpp"

using namespace lowbmm;

static void BM_Footrule(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(1);
  const auto a = random_permutation(rng, m);
  const auto b = random_permutation(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(footrule(a, b));
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_Footrule)->Arg(50)->Arg(1000)->Arg(15000);

static void BM_Kendall(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(2);
  const auto a = random_permutation(rng, m);
  const auto b = random_permutation(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(kendall(a, b));
}
BENCHMARK(BM_Kendall)->Arg(50)->Arg(1000);

static void BM_LeapShiftInPlace(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int l = std::max(1, m / 5);
  Rng rng(3);
  std::vector<int> ranks = random_permutation(rng, m);
  std::vector<int> order = Ranking(ranks).order();
  for (auto _ : state) {
    const auto mv = draw_leap_shift(ranks, l, rng);
    apply_leap_shift(ranks, order, mv);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_LeapShiftInPlace)->Arg(50)->Arg(1000);

static void BM_MallowsSample(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const MallowsParams p{Ranking::identity(m), 2.0};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_mallows(p, 10, ++seed));
}
BENCHMARK(BM_MallowsSample)->Arg(20)->Arg(200);

// One consensus update and one set update per iteration.
static void BM_ChainStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int n_star = static_cast<int>(state.range(1));
  const auto sim = gen_top_rank(n, n_star, 50, 2.0, 4);
  SamplerConfig c = SamplerConfig::defaults(n_star, 2.0, 1);
  LowBmmChain chain(sim.data, c, Rng(5));
  for (auto _ : state) chain.step();
}
BENCHMARK(BM_ChainStep)->Args({20, 8})->Args({1000, 50})->Args({15000, 50});

static void BM_SetUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto sim = gen_top_rank(n, 50, 50, 2.0, 6);
  SamplerConfig c = SamplerConfig::defaults(50, 2.0, 1);
  c.swap = static_cast<int>(state.range(1));
  LowBmmChain chain(sim.data, c, Rng(7));
  for (auto _ : state) benchmark::DoNotOptimize(chain.update_aset());
}
BENCHMARK(BM_SetUpdate)->Args({1000, 1})->Args({1000, 5});
BENCHMARK_MAIN();
