#pragma once

#include <span>

#include "tsgc/features.hpp"

namespace tsgc {

// Feature-space vector: a tissue mean or a single vectorized pixel.
using FeatureVector = std::vector<double>;

struct BoundaryTerm {
  enum class Kind { Proposed, Gaussian };
  Kind kind = Kind::Proposed;
  double sigma = 1.0;  // Gaussian only, > 0

  // min{ 1/||I_i - I_j||, 1 }; identical neighbors get the cap of 1.
  static BoundaryTerm proposed() { return {Kind::Proposed, 1.0}; }
  // exp(-||I_p - I_q||^2 / 2 sigma^2) / dist(p, q) with unit axis spacing.
  static BoundaryTerm gaussian(double sigma) { return {Kind::Gaussian, sigma}; }
};

struct EnergyConfig {
  double lambda = 1.0;
};

struct TerminalWeights {
  std::vector<double> to_source;
  std::vector<double> to_sink;
};

// Pixel graph over a node subset of the image grid. Nodes are pixel indices
// (row * width + col) in ascending order; edges join 8-adjacent in-set pixels
// and are stored once with u < v (node positions, not pixel indices).
struct PixelGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
    bool diagonal = false;
  };

  int height = 0;
  int width = 0;
  std::vector<int> nodes;
  std::vector<double> to_source;
  std::vector<double> to_sink;
  std::vector<Edge> edges;

  std::size_t node_count() const { return nodes.size(); }
};

// Entrywise mean of the feature vectors under the ROI. Throws on an empty ROI
// or a dimension mismatch.
FeatureVector region_mean(const FeatureField& features, const Mask& roi);

// Data-term capacities with source <-> label 1 (mu1) and sink <-> label 2 (mu2):
// to_source(i) = ||I_i - mu2||, to_sink(i) = ||I_i - mu1||. A node that ends on
// the source side keeps its source link and pays the severed sink link, so the
// cut cost reproduces the data cost of the labeling it encodes.
TerminalWeights terminal_weights(const FeatureField& features, const FeatureVector& mu1,
                                 const FeatureVector& mu2, std::span<const int> nodes);

// One undirected edge per 8-adjacent pair of in-set pixels, weighted by the
// boundary term. `nodes` must be ascending pixel indices.
std::vector<PixelGraph::Edge> edge_weights(const FeatureField& features,
                                           std::span<const int> nodes, const BoundaryTerm& term);

// Rescales terminal weights by their global maximum (over both columns) and
// edge weights by the maximum edge weight. All-zero groups are left unchanged.
PixelGraph normalize(PixelGraph graph);

// Nodes from the region mask, terminal and edge weights, then normalize.
// `normalized` is only ever false in experimental paths.
PixelGraph build_graph(const FeatureField& features, const FeatureVector& mu1,
                       const FeatureVector& mu2, const Mask& region, const BoundaryTerm& term,
                       bool normalized = true);

double l2_distance(const float* a, const float* b, int dim);
double l2_distance(const float* a, const FeatureVector& b);

}  // namespace tsgc
