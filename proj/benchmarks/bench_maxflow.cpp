#include <benchmark/benchmark.h>

#include <map>

#include "tsgc/maxflow.hpp"
#include "tsgc/phantom.hpp"
#include "tsgc/pipeline.hpp"

namespace {

using namespace tsgc;

// Stage-1 network of a noisy phantom: the workload the solver actually sees.
const FlowNetwork& grid_network(int side) {
  static std::map<int, FlowNetwork> cache;
  auto it = cache.find(side);
  if (it == cache.end()) {
    PhantomConfig cfg = default_phantom(side, side, 59, 7, 10.0);
    PhantomCase pc = generate(cfg);
    FeatureField features = time_series_features(pc.volume);
    FeatureVector mu1 = region_mean(features, pc.roi_healthy);
    FeatureVector mu2 = region_mean(features, pc.roi_tumor);
    PixelGraph graph = build_graph(features, mu1, mu2, pc.liver_mask, BoundaryTerm::proposed());
    it = cache.emplace(side, to_flow_network(graph)).first;
  }
  return it->second;
}

void BM_MaxFlowGrid(benchmark::State& state) {
  const FlowNetwork& net = grid_network(static_cast<int>(state.range(0)));
  double flow = 0.0;
  for (auto _ : state) {
    CutResult cut = max_flow(net);
    flow = cut.flow_value;
    benchmark::DoNotOptimize(cut.side.data());
  }
  state.counters["nodes"] = static_cast<double>(net.node_count());
  state.counters["flow"] = flow;
}
BENCHMARK(BM_MaxFlowGrid)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_MaxFlowReference(benchmark::State& state) {
  const FlowNetwork& net = grid_network(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CutResult cut = max_flow_reference(net);
    benchmark::DoNotOptimize(cut.flow_value);
  }
}
BENCHMARK(BM_MaxFlowReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
