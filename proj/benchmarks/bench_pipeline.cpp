#include <benchmark/benchmark.h>

#include <map>

#include "tsgc/phantom.hpp"
#include "tsgc/pipeline.hpp"

namespace {

using namespace tsgc;

const SegmentationRequest& phantom_request(int side) {
  static std::map<int, SegmentationRequest> cache;
  auto it = cache.find(side);
  if (it == cache.end()) {
    PhantomCase pc = generate(default_phantom(side, side, 59, 11, 10.0));
    SegmentationRequest req;
    req.volume = std::move(pc.volume);
    req.liver_mask = std::move(pc.liver_mask);
    req.roi_healthy = std::move(pc.roi_healthy);
    req.roi_tumor = std::move(pc.roi_tumor);
    req.roi_vessel = std::move(pc.roi_vessel);
    req.mode = FeatureMode::time_series();
    req.boundary = BoundaryTerm::proposed();
    it = cache.emplace(side, std::move(req)).first;
  }
  return it->second;
}

// Full two-stage segmentation, the per-slice cost a user sees.
void BM_SegmentSlice(benchmark::State& state) {
  const SegmentationRequest& req = phantom_request(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SegmentationResult result = segment(req);
    benchmark::DoNotOptimize(result.labels.labels.data());
  }
}
BENCHMARK(BM_SegmentSlice)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SegmentSliceMedianMode(benchmark::State& state) {
  SegmentationRequest req = phantom_request(static_cast<int>(state.range(0)));
  req.mode = FeatureMode::median_scalar();
  for (auto _ : state) {
    SegmentationResult result = segment(req);
    benchmark::DoNotOptimize(result.labels.labels.data());
  }
}
BENCHMARK(BM_SegmentSliceMedianMode)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
