#include <benchmark/benchmark.h>

#include "ikep/fixtures.hpp"
#include "ikep/generator.hpp"
#include "ikep/matching.hpp"
#include "ikep/mechanisms.hpp"
#include "ikep/rng.hpp"
#include "ikep/solver.hpp"

namespace {

using namespace ikep;

Instance bench_instance(int per_country, double density, std::uint64_t seed) {
  GenConfig cfg;
  cfg.country_sizes = {per_country, per_country, per_country};
  cfg.arc_probability_national = density;
  cfg.arc_probability_international = density * 0.7;
  cfg.gamma = GammaParams(3, Bound::finite(4),
                          {Bound::finite(3), Bound::finite(3), Bound::finite(3)},
                          {Bound::finite(2), Bound::finite(2), Bound::finite(2)},
                          {Bound::finite(1), Bound::finite(1), Bound::finite(1)});
  cfg.seed = seed;
  return gen_instance(cfg);
}

void BM_EnumerateGammaCycles(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)), 0.2, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_gamma_cycles(inst));
  }
}
BENCHMARK(BM_EnumerateGammaCycles)->Arg(8)->Arg(12)->Arg(16);

void BM_ExactPacking(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)), 0.2, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_gamma_packing_exact(inst));
  }
}
BENCHMARK(BM_ExactPacking)->Arg(8)->Arg(12)->Arg(16);

void BM_OrderExactDistribution(benchmark::State& state) {
  // Star of long cycles: candidate count equals the range argument.
  Instance inst = build_fixture("thm7b", {{{"dstar", state.range(0)}}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mech_order_distribution(inst, DistributionMode::exact_permutations()));
  }
}
BENCHMARK(BM_OrderExactDistribution)->Arg(4)->Arg(6)->Arg(8)->Arg(9);

void BM_OrderSampledRun(benchmark::State& state) {
  Instance inst = bench_instance(8, 0.25, 13);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech_order_sample(inst, seed++));
  }
}
BENCHMARK(BM_OrderSampledRun);

void BM_BlossomMatching(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  DetRng rng(17);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform01() < 0.2) edges.push_back({u, v});
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_cardinality_matching(n, edges));
  }
}
BENCHMARK(BM_BlossomMatching)->Arg(50)->Arg(150);

}  // namespace

BENCHMARK_MAIN();
