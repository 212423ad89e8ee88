#include <benchmark/benchmark.h>

#include <random>

#include "ctop/deligne.hpp"
#include "ctop/spaces.hpp"
#include "ctop/spectral.hpp"
#include "ctop/steenrod.hpp"
#include "ctop/weight.hpp"

using namespace ctop;

static void BM_RankF2(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937 g(1);
  Matrix m(Ring::F2, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g() & 1u) m.set(i, j, 1L);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankF2)->Arg(64)->Arg(256)->Arg(512);

static void BM_CohomologyGenusTwo(benchmark::State& state) {
  auto k = spaces::genusTwo();
  Ring r = state.range(0) ? Ring::Q : Ring::F2;
  for (auto _ : state) benchmark::DoNotOptimize(Cohomology(cochains(k, r)).dims());
}
BENCHMARK(BM_CohomologyGenusTwo)->Arg(0)->Arg(1);

static void BM_SteenrodMatrices(benchmark::State& state) {
  auto k = state.range(0) ? spaces::genusTwo() : spaces::projectivePlane();
  for (auto _ : state) {
    auto alg = simplicialCupIAlgebra(k);
    Cohomology h(alg.complex());
    for (int d = 0; d <= 2; ++d)
      for (int s = 0; s <= 2 - d; ++s) benchmark::DoNotOptimize(sqMatrix(alg, h, d, s));
  }
}
BENCHMARK(BM_SteenrodMatrices)->Arg(0)->Arg(1);

static void BM_WeightNodalGenusTwo(benchmark::State& state) {
  auto h = descriptors::nodalGenusTwo();
  bool sq = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(weightSS(h, Ring::F2, sq).abutment);
}
BENCHMARK(BM_WeightNodalGenusTwo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_IntersectionChains(benchmark::State& state) {
  auto x = spaces::suspendedTorus();
  auto p = Perversity::zero(3);
  for (auto _ : state) benchmark::DoNotOptimize(intersectionHomology(x, p, Ring::F2));
}
BENCHMARK(BM_IntersectionChains)->Unit(benchmark::kMillisecond);

static void BM_DeligneSuspendedTorus(benchmark::State& state) {
  auto x = spaces::suspendedTorus();
  for (auto _ : state) {
    DeligneIC ic(x, Ring::F2);
    for (const auto& p : enumeratePerversities(3)) benchmark::DoNotOptimize(ic.ih(p));
  }
}
BENCHMARK(BM_DeligneSuspendedTorus)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
