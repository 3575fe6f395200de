#pragma once

#include <optional>

#include "tsgc/maxflow.hpp"

namespace tsgc {

struct SegmentationRequest {
  TimeSeriesVolume volume;
  Mask liver_mask;
  Mask roi_healthy;
  Mask roi_tumor;
  Mask roi_vessel;
  FeatureMode mode;
  BoundaryTerm boundary;
  bool full_image = false;          // cut the whole grid, mask the labels afterwards
  std::optional<int> smoothing;     // odd box kernel size; absent = no smoothing
  EnergyConfig energy;              // lambda stays 1 in the standard path
  bool normalize_weights = true;
};

struct EnergyReport {
  double data_term = 0.0;
  double perimeter_term = 0.0;
  double total = 0.0;
  double lambda = 1.0;
};

struct SegmentationResult {
  LabelMap labels;
  EnergyReport energy_stage1;
  std::optional<EnergyReport> energy_stage2;  // absent when stage 1 found no tumor
  double stage1_seconds = 0.0;
  double stage2_seconds = 0.0;
};

// Two-stage 3-label segmentation: healthy-vs-tumor over the liver mask, then
// vessel-vs-tumor over the pixels the first cut labeled tumor. Each stage's
// labeling globally minimizes the energy restricted to its node set.
SegmentationResult segment(const SegmentationRequest& req);

// Energy of an explicit binary labeling over `nodes` (1 = mu1's label,
// 2 = mu2's label): data term plus lambda times the boundary weight of every
// 8-adjacent in-set pair with differing labels. With `normalized` the sums use
// the same rescaled weights the solver sees.
EnergyReport energy(const FeatureField& features, std::span<const int> nodes,
                    std::span<const std::uint8_t> labels, const FeatureVector& mu1,
                    const FeatureVector& mu2, const BoundaryTerm& boundary, double lambda,
                    bool normalized);

// Same accounting evaluated on an already-built graph.
EnergyReport graph_energy(const PixelGraph& graph, std::span<const std::uint8_t> labels,
                          double lambda);

}  // namespace tsgc
