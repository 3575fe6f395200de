#include <benchmark/benchmark.h>

#include "tsgc/features.hpp"
#include "tsgc/phantom.hpp"

namespace {

using namespace tsgc;

const TimeSeriesVolume& bench_volume() {
  static TimeSeriesVolume vol = generate(default_phantom(256, 256, 59, 3, 10.0)).volume;
  return vol;
}

void BM_TimeSeriesFeatures(benchmark::State& state) {
  const TimeSeriesVolume& vol = bench_volume();
  for (auto _ : state) {
    FeatureField f = time_series_features(vol);
    benchmark::DoNotOptimize(f.values.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(vol.data.size() * sizeof(float)));
}
BENCHMARK(BM_TimeSeriesFeatures)->Unit(benchmark::kMillisecond);

void BM_MultiscaleFeatures(benchmark::State& state) {
  const TimeSeriesVolume& vol = bench_volume();
  for (auto _ : state) {
    FeatureField f = multiscale_features(vol);
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(BM_MultiscaleFeatures)->Unit(benchmark::kMillisecond);

void BM_MedianFeatures(benchmark::State& state) {
  const TimeSeriesVolume& vol = bench_volume();
  for (auto _ : state) {
    FeatureField f = median_scalar_features(vol);
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(BM_MedianFeatures)->Unit(benchmark::kMillisecond);

void BM_SmoothVolume(benchmark::State& state) {
  const TimeSeriesVolume& vol = bench_volume();
  for (auto _ : state) {
    TimeSeriesVolume s = smooth_volume(vol, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(s.data.data());
  }
}
BENCHMARK(BM_SmoothVolume)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
