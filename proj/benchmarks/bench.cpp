#include <benchmark/benchmark.h>

#include "sphericoh/coherence.hpp"
#include "sphericoh/grids.hpp"
#include "sphericoh/optimize.hpp"
#include "sphericoh/specfun.hpp"
#include "sphericoh/wigner3j.hpp"

using namespace sphericoh;

namespace {

void BM_WignerD(benchmark::State& state) {
  const int l = int(state.range(0));
  double x = 0.37;
  for (auto _ : state) {
    double s = 0.0;
    for (int k = -l; k <= l; ++k)
      for (int n = -l; n <= l; ++n) s += specfun::wigner_d_cos(l, k, n, x);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * (2 * l + 1) * (2 * l + 1));
}
BENCHMARK(BM_WignerD)->Arg(4)->Arg(8)->Arg(16);

void BM_ThreeJ(benchmark::State& state) {
  const int lmax = int(state.range(0));
  for (auto _ : state) {
    double s = 0.0;
    for (int l1 = 0; l1 <= lmax; ++l1)
      for (int l2 = 0; l2 <= lmax; ++l2)
        for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3)
          s += wigner3j::threej({l1, l2, l3, 1 <= l1 ? 1 : 0, 0,
                                 1 <= l1 ? -1 : 0});
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ThreeJ)->Arg(8)->Arg(16);

void BM_SensingMatrix(benchmark::State& state) {
  const int B = int(state.range(0));
  grids::Grid g = grids::equispaced_grid_random(grids::min_samples(B), 1);
  for (auto _ : state) {
    auto sm = coherence::build_sensing_matrix(g, B, grids::BasisKind::wigner);
    benchmark::DoNotOptimize(sm.entries.data());
  }
}
BENCHMARK(BM_SensingMatrix)->Arg(4)->Arg(6)->Arg(8);

void BM_MutualCoherence(benchmark::State& state) {
  const int B = int(state.range(0));
  grids::Grid g = grids::equispaced_grid_random(grids::min_samples(B), 1);
  auto sm = coherence::build_sensing_matrix(g, B, grids::BasisKind::wigner);
  for (auto _ : state) {
    auto rep = coherence::mutual_coherence(sm);
    benchmark::DoNotOptimize(rep.mu);
  }
}
BENCHMARK(BM_MutualCoherence)->Arg(4)->Arg(6)->Arg(8);

void BM_Gradient(benchmark::State& state) {
  const int B = int(state.range(0));
  grids::Grid g = grids::equispaced_grid_random(grids::min_samples(B), 1);
  for (auto _ : state) {
    auto v = optimize::gradient(g, B, 8, optimize::AngleVar::phi,
                                grids::BasisKind::wigner);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_Gradient)->Arg(4)->Arg(6);

void BM_OptimizerIteration(benchmark::State& state) {
  optimize::OptimizerConfig c;
  c.method = optimize::Method::adam;
  c.i_max = 10;
  c.seed = 1;
  for (auto _ : state) {
    auto r = optimize::run(c, 4, 30, grids::BasisKind::wigner);
    benchmark::DoNotOptimize(r.final_mu);
  }
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_OptimizerIteration);

}  // namespace

BENCHMARK_MAIN();
