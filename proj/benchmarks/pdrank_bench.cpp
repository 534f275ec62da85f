#include <benchmark/benchmark.h>

#include "pdrank/evaluation.hpp"
#include "pdrank/indicators.hpp"
#include "pdrank/regression.hpp"
#include "pdrank/synth.hpp"

namespace {

using namespace pdrank;

// About the size of the 1970-2014 league history: 1200 team-seasons.
const std::vector<TeamSeason>& league() {
  static const auto seasons = [] {
    SynthConfig cfg;
    cfg.n_teams = 30;
    cfg.n_seasons = 40;
    return build_team_seasons(generate(cfg));
  }();
  return seasons;
}

void BM_WpdExp(benchmark::State& state) {
  const auto w = WeightFunction::exp(12.0);
  for (auto _ : state) {
    double sum = 0.0;
    for (const auto& s : league()) sum += wpd(s, w).value;
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(league().size()));
}
BENCHMARK(BM_WpdExp);

void BM_SweepCap(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_cap(league(), kDefaultCapMin, kDefaultCapMax, threads));
}
BENCHMARK(BM_SweepCap)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SweepSoftcap(benchmark::State& state) {
  const auto kind = static_cast<SoftCapKind>(state.range(0));
  const auto grid = default_d_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_softcap(league(), kind, grid));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_SweepSoftcap)
    ->Arg(static_cast<int>(SoftCapKind::kTanh))
    ->Arg(static_cast<int>(SoftCapKind::kErf))
    ->Arg(static_cast<int>(SoftCapKind::kExp))
    ->Unit(benchmark::kMillisecond);

void BM_SweepPythagorean(benchmark::State& state) {
  const auto grid = default_exponent_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_pythagorean(league(), grid));
}
BENCHMARK(BM_SweepPythagorean)->Unit(benchmark::kMillisecond);

void BM_Featurize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(featurize(league()));
}
BENCHMARK(BM_Featurize)->Unit(benchmark::kMicrosecond);

void BM_RidgeGdFit(benchmark::State& state) {
  const auto data = featurize(league());
  GdOptions options;
  options.iterations = static_cast<int>(state.range(0));
  options.tolerance = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(ridge_gd_fit(data.x, data.y, options));
}
BENCHMARK(BM_RidgeGdFit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_RidgeClosedForm(benchmark::State& state) {
  const auto data = featurize(league());
  for (auto _ : state) benchmark::DoNotOptimize(ridge_closed_form(data.x.counts, data.y.values, 1.0));
}
BENCHMARK(BM_RidgeClosedForm)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
