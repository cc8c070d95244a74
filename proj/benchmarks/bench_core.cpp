#include <benchmark/benchmark.h>

#include <cstddef>

#include "hwtv/adapt.hpp"
#include "hwtv/linops.hpp"
#include "hwtv/solver.hpp"
#include "hwtv/spectral.hpp"
#include "hwtv/synth.hpp"

namespace {

using namespace hwtv;

ImageBuffer phantom(std::size_t n) {
  PhantomSpec spec;
  spec.width = spec.height = n;
  return make_phantom(spec);
}

void BM_Gradient(benchmark::State& state) {
  const ImageBuffer u = phantom(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gradient(u));
  state.SetItemsProcessed(state.iterations() * u.size());
}
BENCHMARK(BM_Gradient)->RangeMultiplier(2)->Range(64, 512);

void BM_Divergence(benchmark::State& state) {
  const GradientField t = gradient(phantom(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(divergence(t));
  state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_Divergence)->RangeMultiplier(2)->Range(64, 512);

void BM_SpectralBlur(benchmark::State& state) {
  const ImageBuffer u = phantom(state.range(0));
  const SpectralPlan plan = build_plan(u.width(), u.height(), BlurSpec::gaussian(5, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(plan.blur(u));
  state.SetItemsProcessed(state.iterations() * u.size());
}
BENCHMARK(BM_SpectralBlur)->RangeMultiplier(2)->Range(64, 512);

void BM_SolveU(benchmark::State& state) {
  const ImageBuffer rhs = phantom(state.range(0));
  const SpectralPlan plan = build_plan(rhs.width(), rhs.height(), BlurSpec::gaussian(5, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_u(plan, rhs, 5.0));
  state.SetItemsProcessed(state.iterations() * rhs.size());
}
BENCHMARK(BM_SolveU)->RangeMultiplier(2)->Range(64, 512);

void BM_BoxMean(benchmark::State& state) {
  const ImageBuffer v = gradient_norms(gradient(phantom(256)), TvNorm::Isotropic);
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(box_mean(v, r));
}
BENCHMARK(BM_BoxMean)->Arg(2)->Arg(6)->Arg(14)->Arg(40);

void BM_ProxIsotropic(benchmark::State& state) {
  const GradientField q = gradient(phantom(state.range(0)));
  const ImageBuffer alpha(q.width, q.height, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(prox_t(q, alpha, 20.0, TvNorm::Isotropic));
  state.SetItemsProcessed(state.iterations() * q.size());
}
BENCHMARK(BM_ProxIsotropic)->RangeMultiplier(2)->Range(64, 512);

void BM_Iterate(benchmark::State& state) {
  const ImageBuffer u = phantom(state.range(0));
  const BlurSpec blur = BlurSpec::gaussian(5, 1.0);
  const ImageBuffer g = degrade(u, {blur, 0.05, 1});
  SolverConfig cfg;
  cfg.mode = state.range(1) ? SolverMode::Hwtv : SolverMode::TvScalar;
  AdmmSolver solver(g, blur, 0.05, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(solver.iterate());
}
BENCHMARK(BM_Iterate)->ArgsProduct({{128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
