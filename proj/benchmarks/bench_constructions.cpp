#include "qbar/campaign.hpp"
#include "qbar/isometry.hpp"

#include <benchmark/benchmark.h>

using namespace qbar;

namespace {

InstanceSpec instance(std::size_t n, std::uint64_t seed) {
  InstanceConfig cfg;
  cfg.n_min = cfg.n_max = n;
  cfg.l_min = n;
  return random_instance(cfg, seed);
}

void BM_SmallBasis(benchmark::State& state) {
  InstanceConfig cfg;
  cfg.n_min = cfg.n_max = std::size_t(state.range(0));
  cfg.l_min = 2;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    state.PauseTiming();
    Subspace z = random_instance(cfg, seed++).z();
    state.ResumeTiming();
    benchmark::DoNotOptimize(small_basis(z));
  }
}
BENCHMARK(BM_SmallBasis)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SmallZero(benchmark::State& state) {
  InstanceSpec spec = instance(std::size_t(state.range(0)), 7);
  for (auto _ : state) {
    Session s;
    benchmark::DoNotOptimize(small_zero_free(*spec.form, s));
  }
}
BENCHMARK(BM_SmallZero)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Construction(benchmark::State& state, Construction c) {
  std::uint64_t seed = 11;
  for (auto _ : state) {
    state.PauseTiming();
    InstanceSpec spec = instance(std::size_t(state.range(0)), seed++);
    if (c == Construction::cd) {
      std::mt19937_64 rng(seed);
      QuadraticSpace q = spec.space();
      spec.isometry = random_isometry(q, 2, rng);
    }
    state.ResumeTiming();
    benchmark::DoNotOptimize(run_instance(spec, c, {}));
  }
}
BENCHMARK_CAPTURE(BM_Construction, maxiso, Construction::maxiso)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Construction, witt, Construction::witt)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Construction, orthobasis, Construction::orthobasis)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Construction, cd, Construction::cd)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
