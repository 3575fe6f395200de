#include "tsgc/pipeline.hpp"

#include <chrono>
#include <stdexcept>

namespace tsgc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_mask_dims(const Mask& mask, const TimeSeriesVolume& vol, const char* name) {
  if (mask.height != vol.height || mask.width != vol.width) {
    throw std::invalid_argument(std::string(name) + " dimensions do not match the volume");
  }
}

void check_roi(const Mask& roi, const Mask& liver, const char* name) {
  bool any = false;
  for (std::size_t i = 0; i < roi.bits.size(); ++i) {
    if (!roi.bits[i]) continue;
    any = true;
    if (!liver.bits[i]) {
      throw std::invalid_argument(std::string(name) + " extends outside the liver mask");
    }
  }
  if (!any) throw std::invalid_argument(std::string(name) + " is empty");
}

void validate_request(const SegmentationRequest& req) {
  validate_volume(req.volume);
  check_mask_dims(req.liver_mask, req.volume, "liver mask");
  check_mask_dims(req.roi_healthy, req.volume, "healthy ROI");
  check_mask_dims(req.roi_tumor, req.volume, "tumor ROI");
  check_mask_dims(req.roi_vessel, req.volume, "vessel ROI");
  if (req.liver_mask.count() == 0) throw std::invalid_argument("liver mask is empty");
  check_roi(req.roi_healthy, req.liver_mask, "healthy ROI");
  check_roi(req.roi_tumor, req.liver_mask, "tumor ROI");
  check_roi(req.roi_vessel, req.liver_mask, "vessel ROI");
  if (!(req.energy.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

void check_binary_labels(std::span<const std::uint8_t> labels, std::size_t expected) {
  if (labels.size() != expected) {
    throw std::invalid_argument("labeling must cover exactly the graph's node set");
  }
  for (std::uint8_t l : labels) {
    if (l != 1 && l != 2) throw std::invalid_argument("binary labels must be 1 or 2");
  }
}

}  // namespace

EnergyReport graph_energy(const PixelGraph& graph, std::span<const std::uint8_t> labels,
                          double lambda) {
  check_binary_labels(labels, graph.node_count());
  EnergyReport report;
  report.lambda = lambda;
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    report.data_term += labels[i] == 1 ? graph.to_sink[i] : graph.to_source[i];
  }
  for (const auto& e : graph.edges) {
    if (labels[static_cast<std::size_t>(e.u)] != labels[static_cast<std::size_t>(e.v)]) {
      report.perimeter_term += e.weight;
    }
  }
  report.total = report.data_term + lambda * report.perimeter_term;
  return report;
}

EnergyReport energy(const FeatureField& features, std::span<const int> nodes,
                    std::span<const std::uint8_t> labels, const FeatureVector& mu1,
                    const FeatureVector& mu2, const BoundaryTerm& boundary, double lambda,
                    bool normalized) {
  check_binary_labels(labels, nodes.size());
  PixelGraph graph;
  graph.height = features.height;
  graph.width = features.width;
  graph.nodes.assign(nodes.begin(), nodes.end());
  TerminalWeights tw = terminal_weights(features, mu1, mu2, graph.nodes);
  graph.to_source = std::move(tw.to_source);
  graph.to_sink = std::move(tw.to_sink);
  graph.edges = edge_weights(features, graph.nodes, boundary);
  if (normalized) graph = normalize(std::move(graph));
  return graph_energy(graph, labels, lambda);
}

SegmentationResult segment(const SegmentationRequest& req) {
  validate_request(req);
  const int h = req.volume.height, w = req.volume.width;
  auto t0 = Clock::now();

  const TimeSeriesVolume* vol = &req.volume;
  TimeSeriesVolume smoothed;
  if (req.smoothing.has_value()) {
    smoothed = smooth_volume(req.volume, *req.smoothing);
    vol = &smoothed;
  }

  FeatureField features = compute_features(*vol, req.mode);
  FeatureVector mu_healthy = region_mean(features, req.roi_healthy);
  FeatureVector mu_tumor = region_mean(features, req.roi_tumor);
  FeatureVector mu_vessel = region_mean(features, req.roi_vessel);

  Mask stage1_region;
  if (req.full_image) {
    stage1_region = Mask{h, w, std::vector<std::uint8_t>(static_cast<std::size_t>(h) * w, 1)};
  } else {
    stage1_region = req.liver_mask;
  }

  PixelGraph graph1 = build_graph(features, mu_healthy, mu_tumor, stage1_region, req.boundary,
                                  req.normalize_weights);
  CutResult cut1 = max_flow(to_flow_network(graph1, req.energy.lambda));
  std::vector<std::uint8_t> labels1 = cut_to_labels(cut1, graph1);

  SegmentationResult result;
  result.labels = LabelMap::background(h, w);
  result.energy_stage1 = graph_energy(graph1, labels1, req.energy.lambda);

  Mask stage2_region = Mask::zeros(h, w);
  std::size_t tumor_side = 0;
  for (std::size_t i = 0; i < graph1.nodes.size(); ++i) {
    int pixel = graph1.nodes[i];
    if (labels1[i] == 1) {
      result.labels.labels[static_cast<std::size_t>(pixel)] = Label::Healthy;
    } else {
      stage2_region.bits[static_cast<std::size_t>(pixel)] = 1;
      ++tumor_side;
    }
  }
  result.stage1_seconds = seconds_since(t0);

  auto t1 = Clock::now();
  if (tumor_side > 0) {
    PixelGraph graph2 = build_graph(features, mu_vessel, mu_tumor, stage2_region, req.boundary,
                                    req.normalize_weights);
    CutResult cut2 = max_flow(to_flow_network(graph2, req.energy.lambda));
    std::vector<std::uint8_t> labels2 = cut_to_labels(cut2, graph2);
    result.energy_stage2 = graph_energy(graph2, labels2, req.energy.lambda);
    for (std::size_t i = 0; i < graph2.nodes.size(); ++i) {
      result.labels.labels[static_cast<std::size_t>(graph2.nodes[i])] =
          labels2[i] == 1 ? Label::Vessel : Label::Tumor;
    }
    result.stage2_seconds = seconds_since(t1);
  }

  if (req.full_image) {
    for (std::size_t i = 0; i < result.labels.labels.size(); ++i) {
      if (!req.liver_mask.bits[i]) result.labels.labels[i] = Label::Background;
    }
  }
  return result;
}

}  // namespace tsgc
