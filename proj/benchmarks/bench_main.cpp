#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/spacing_law.hpp"
#include "rmtlab/stats.hpp"
#include "rmtlab/verify.hpp"

using namespace rmtlab;

namespace {

const EnsembleSpec kSpecs[] = {
    {EnsembleKind::Gue},
    {EnsembleKind::Goe},
    {EnsembleKind::Planar, {{"y0", 0.5}}},
    {EnsembleKind::Cylinder, {{"rho0", 1.0}}},
    {EnsembleKind::Paraboloid, {{"alpha", 1.0}}},
    {EnsembleKind::Quartic, {{"q_curv", 1.0}}},
    {EnsembleKind::Cone, {{"beta", 1.0}, {"y0", 1.0}}},
    {EnsembleKind::GueGoeInterp, {{"eps_interp", 0.3}}},
    {EnsembleKind::PtNuZero},
    {EnsembleKind::PtNuSlice, {{"nu0", 0.7}}},
    {EnsembleKind::PtGammaSlice, {{"gamma0", 1.0}}},
};

}  // namespace

static void Draw(benchmark::State& state) {
  const EnsembleSpec& spec = kSpecs[state.range(0)];
  state.SetLabel(spec.describe());
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw(spec, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(Draw)->DenseRange(0, 10);

static void Eigenpair(benchmark::State& state) {
  Rng rng(2);
  std::vector<Matrix2C> ms;
  for (int i = 0; i < 1024; ++i) {
    ms.push_back(draw(kSpecs[10], rng).matrix);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenpair(ms[i++ & 1023]));
  }
}
BENCHMARK(Eigenpair);

static void LawConstruction(benchmark::State& state) {
  const EnsembleSpec& spec = kSpecs[state.range(0)];
  state.SetLabel(spec.describe());
  for (auto _ : state) {
    benchmark::DoNotOptimize(SpacingLaw(spec));
  }
}
BENCHMARK(LawConstruction)->Arg(0)->Arg(5)->Arg(7)->Arg(10);

static void Cdf(benchmark::State& state) {
  const SpacingLaw law(kSpecs[state.range(0)]);
  state.SetLabel(law.spec().describe());
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.cdf(s));
    s = s > 4.0 ? 0.0 : s + 0.01;
  }
}
BENCHMARK(Cdf)->DenseRange(0, 10);

static void Pdf(benchmark::State& state) {
  const SpacingLaw law(kSpecs[state.range(0)]);
  state.SetLabel(law.spec().describe());
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.pdf(s));
    s = s > 4.0 ? 0.0 : s + 0.01;
  }
}
BENCHMARK(Pdf)->Arg(0)->Arg(4)->Arg(5)->Arg(7);

static void KsStatistic(benchmark::State& state) {
  auto s = spacing_stream(kSpecs[0], static_cast<std::size_t>(state.range(0)), 3);
  std::sort(s.begin(), s.end());
  for (auto _ : state) {
    benchmark::DoNotOptimize(ks_statistic(s, gue_cdf));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(KsStatistic)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void StreamParallel(benchmark::State& state) {
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream_parallel(kSpecs[5], 100000, 4, workers));
  }
}
BENCHMARK(StreamParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void VerifyEnsemble(benchmark::State& state) {
  const EnsembleSpec& spec = kSpecs[state.range(0)];
  state.SetLabel(spec.describe());
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_ensemble(spec, 100000, golden_seed(spec.kind)));
  }
}
BENCHMARK(VerifyEnsemble)->DenseRange(0, 10)->Unit(benchmark::kMillisecond);

static void DivergenceProbe(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(divergence_probe({2.0, 4.0, 8.0, 16.0}));
  }
}
BENCHMARK(DivergenceProbe)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
