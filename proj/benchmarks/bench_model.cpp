#include <benchmark/benchmark.h>

#include "tipanchor/anchor_model.hpp"
#include "tipanchor/calibration.hpp"
#include "tipanchor/design.hpp"
#include "tipanchor/rft.hpp"

namespace {

using namespace tipanchor;

MediaProfile Sand() {
  std::vector<CalibrationSample> samples;
  for (int i = 0; i < 9; ++i) {
    const double h = 0.03 + 0.015 * i;
    samples.push_back({h, 33.33 * (h - h * h / 0.12), Regime::kSelfAnchorWeight});
  }
  const auto probe = AnchorGeometry::TipExtender(0.0075, 0.20);
  return ApplyTipSideFit(GenericSand(), FitTipSideRatio(samples, probe), probe);
}

void BM_DiscretizeAndIntegrate(benchmark::State& state) {
  const MediaProfile media = Sand();
  const auto geometry = AnchorGeometry::TipExtender(0.0075, 0.45);
  const double element = 1e-3 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    const auto elements = DiscretizeAnchor(geometry, 0.15, element);
    benchmark::DoNotOptimize(IntegrateVerticalForce(elements, media));
  }
}
BENCHMARK(BM_DiscretizeAndIntegrate)->Arg(1)->Arg(2)->Arg(4);

void BM_CriticalDepth(benchmark::State& state) {
  const MediaProfile media = Sand();
  const auto geometry = AnchorGeometry::HairyTipExtender(0.0075, 0.45, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(CriticalDepth(geometry, media));
}
BENCHMARK(BM_CriticalDepth);

void BM_ForceReport(benchmark::State& state) {
  const MediaProfile media = Sand();
  const auto geometry = AnchorGeometry::HairyTipExtender(0.0075, 0.45, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(BuildForceReport(geometry, media, 1e-3));
}
BENCHMARK(BM_ForceReport);

void BM_OptimizeDefaultGrid(benchmark::State& state) {
  const MediaProfile media = Sand();
  DesignConstraints constraints;
  constraints.max_roots = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(OptimizeConfig(constraints, media));
}
BENCHMARK(BM_OptimizeDefaultGrid)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
