#include <benchmark/benchmark.h>

#include "changeset/connect.hpp"
#include "changeset/experiment.hpp"
#include "changeset/rng.hpp"
#include "changeset/scan.hpp"
#include "changeset/synth.hpp"

using namespace changeset;

namespace {

Scenario bench_scenario(int d) {
  Scenario s;
  s.rows = 100;
  s.cols = 100;
  s.sigma2 = 2.0;
  s.frames = d;
  s.seed = 7;
  s.background = MeanSpec{MeanKind::Drift, 0.0};
  s.shapes = {{ShapeSpec{NormOrder::LInf, Rational(100, 3), Point{50, 50}},
               MeanSpec{MeanKind::DriftPlusAlt, 0.0}}};
  return s;
}

void BM_EstimateChangePoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  std::vector<double> values(static_cast<std::size_t>(n) * d);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = rng::to_unit(rng::mix64(i));
  const PanelSeries series(n, d, values);
  const Gamma gamma(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_change_point(series, gamma));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * d);
}

void BM_Generate(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PreparedScenario prep(bench_scenario(d));
  for (auto _ : state) benchmark::DoNotOptimize(prep.generate_frames(d, 42));
  state.SetItemsProcessed(state.iterations() * 100 * 100 * static_cast<std::int64_t>(d));
}

void BM_ScanHorizontal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PreparedScenario prep(bench_scenario(d));
  const FrameSequence frames = prep.generate_frames(d, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(scan(frames, Orientation::Horizontal, 6, Gamma(0.0)));
}

void BM_EstimateChangeSet(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const PreparedScenario prep(bench_scenario(d));
  const FrameSequence frames = prep.generate_frames(d, 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_change_set(frames, ScanMode::Both, OverlapRule(6, 2), Gamma(0.0)));
}

void BM_Jaccard(benchmark::State& state) {
  const Lattice lat(100, 100);
  const PointSet a = make_shape({NormOrder::LInf, Rational(100, 3), {50, 50}}, lat);
  const PointSet b = make_shape({NormOrder::L2, Rational(100, 3), {50, 50}}, lat);
  for (auto _ : state) benchmark::DoNotOptimize(jaccard_distance(a, b));
}

}  // namespace

BENCHMARK(BM_EstimateChangePoint)->Args({6, 100})->Args({6, 1000})->Args({16, 1000});
BENCHMARK(BM_Generate)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanHorizontal)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateChangeSet)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jaccard);

BENCHMARK_MAIN();
