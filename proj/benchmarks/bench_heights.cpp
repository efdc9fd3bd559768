#include "qbar/heights.hpp"
#include "qbar/random.hpp"

#include <benchmark/benchmark.h>

using namespace qbar;

namespace {

TowerContext tower_of_depth(int depth) {
  static const long radicands[] = {2, 3, 5, 7};
  TowerContext ctx = TowerContext::rational();
  for (int i = 0; i < depth; ++i) {
    std::vector<Rational> sq(ctx.degree());
    sq[0] = radicands[i];
    ctx = ctx.with_generator(sq);
  }
  return ctx;
}

void BM_HeightVector(benchmark::State& state) {
  TowerContext ctx = tower_of_depth(int(state.range(0)));
  random::Rng rng(1);
  Vector x = random::vector(rng, 5, 50, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(height_vector(x));
}
BENCHMARK(BM_HeightVector)->DenseRange(0, 3);

void BM_FinitePartGauss(benchmark::State& state) {
  TowerContext ctx = tower_of_depth(1);
  random::Rng rng(2);
  Vector x = random::vector(rng, 4, 200, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(finite_part_gauss(x));
}
BENCHMARK(BM_FinitePartGauss);

void BM_FinitePartQuadratic(benchmark::State& state) {
  TowerContext ctx = tower_of_depth(1);
  random::Rng rng(2);
  Vector x = random::vector(rng, 4, 200, ctx);
  for (auto _ : state) benchmark::DoNotOptimize(finite_part_quadratic(x));
}
BENCHMARK(BM_FinitePartQuadratic);

void BM_SubspaceHeight(benchmark::State& state) {
  random::Rng rng(3);
  auto q = TowerContext::rational();
  const std::size_t n = std::size_t(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    Subspace z = random::subspace(rng, n, n / 2, 20, q);  // fresh: heights are memoised per subspace
    state.ResumeTiming();
    benchmark::DoNotOptimize(height_subspace(z));
  }
}
BENCHMARK(BM_SubspaceHeight)->Arg(4)->Arg(6)->Arg(8);

}  // namespace
