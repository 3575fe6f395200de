#include "tsgc/graphbuild.hpp"

#include <cmath>
#include <stdexcept>

#include "tsgc/parallel.hpp"

namespace tsgc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double boundary_weight(const BoundaryTerm& term, double dist_sq, bool diagonal) {
  switch (term.kind) {
    case BoundaryTerm::Kind::Proposed: {
      if (dist_sq <= 0.0) return 1.0;
      double w = 1.0 / std::sqrt(dist_sq);
      return w < 1.0 ? w : 1.0;
    }
    case BoundaryTerm::Kind::Gaussian: {
      double g = std::exp(-dist_sq / (2.0 * term.sigma * term.sigma));
      return diagonal ? g / kSqrt2 : g;
    }
  }
  return 0.0;
}

double feature_distance_sq(const float* a, const float* b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    double diff = static_cast<double>(a[d]) - static_cast<double>(b[d]);
    s += diff * diff;
  }
  return s;
}

}  // namespace

double l2_distance(const float* a, const float* b, int dim) {
  return std::sqrt(feature_distance_sq(a, b, dim));
}

double l2_distance(const float* a, const FeatureVector& b) {
  double s = 0.0;
  for (std::size_t d = 0; d < b.size(); ++d) {
    double diff = static_cast<double>(a[d]) - b[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

FeatureVector region_mean(const FeatureField& features, const Mask& roi) {
  if (roi.height != features.height || roi.width != features.width) {
    throw std::invalid_argument("ROI dimensions do not match the feature field");
  }
  FeatureVector sum(features.dim, 0.0);
  std::size_t count = 0;
  for (int r = 0; r < roi.height; ++r) {
    for (int c = 0; c < roi.width; ++c) {
      if (!roi.at(r, c)) continue;
      const float* v = features.vec(r, c);
      for (int d = 0; d < features.dim; ++d) sum[d] += v[d];
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("region mean of an empty ROI is undefined");
  for (double& s : sum) s /= static_cast<double>(count);
  return sum;
}

TerminalWeights terminal_weights(const FeatureField& features, const FeatureVector& mu1,
                                 const FeatureVector& mu2, std::span<const int> nodes) {
  if (static_cast<int>(mu1.size()) != features.dim ||
      static_cast<int>(mu2.size()) != features.dim) {
    throw std::invalid_argument("cluster center dimension does not match the feature field");
  }
  TerminalWeights tw;
  tw.to_source.resize(nodes.size());
  tw.to_sink.resize(nodes.size());
  const float* base = features.values.data();
  const int dim = features.dim;
  detail::parallel_chunks(nodes.size(), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const float* v = base + static_cast<std::size_t>(nodes[i]) * dim;
      tw.to_source[i] = l2_distance(v, mu2);
      tw.to_sink[i] = l2_distance(v, mu1);
    }
  });
  return tw;
}

std::vector<PixelGraph::Edge> edge_weights(const FeatureField& features,
                                           std::span<const int> nodes, const BoundaryTerm& term) {
  if (term.kind == BoundaryTerm::Kind::Gaussian && !(term.sigma > 0.0)) {
    throw std::invalid_argument("gaussian boundary term requires sigma > 0");
  }
  const int h = features.height, w = features.width;
  std::vector<int> node_of(static_cast<std::size_t>(h) * w, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    node_of[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
  }

  // Forward half of the 8-neighborhood; scanning ascending pixel indices
  // yields each undirected edge once with u < v.
  static constexpr int kOffsets[4][2] = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};

  std::vector<PixelGraph::Edge> edges;
  edges.reserve(nodes.size() * 4);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int pixel = nodes[i];
    int r = pixel / w, c = pixel % w;
    for (const auto& off : kOffsets) {
      int rr = r + off[0], cc = c + off[1];
      if (rr >= h || cc < 0 || cc >= w) continue;
      int j = node_of[static_cast<std::size_t>(rr) * w + cc];
      if (j < 0) continue;
      bool diagonal = off[0] != 0 && off[1] != 0;
      edges.push_back({static_cast<int>(i), j, 0.0, diagonal});
    }
  }

  const float* base = features.values.data();
  const int dim = features.dim;
  detail::parallel_chunks(edges.size(), [&](std::size_t e0, std::size_t e1) {
    for (std::size_t e = e0; e < e1; ++e) {
      PixelGraph::Edge& edge = edges[e];
      const float* a = base + static_cast<std::size_t>(nodes[edge.u]) * dim;
      const float* b = base + static_cast<std::size_t>(nodes[edge.v]) * dim;
      edge.weight = boundary_weight(term, feature_distance_sq(a, b, dim), edge.diagonal);
    }
  });
  return edges;
}

PixelGraph normalize(PixelGraph graph) {
  double tmax = 0.0;
  for (double v : graph.to_source) tmax = std::max(tmax, v);
  for (double v : graph.to_sink) tmax = std::max(tmax, v);
  if (tmax > 0.0) {
    for (double& v : graph.to_source) v /= tmax;
    for (double& v : graph.to_sink) v /= tmax;
  }
  double emax = 0.0;
  for (const auto& e : graph.edges) emax = std::max(emax, e.weight);
  if (emax > 0.0) {
    for (auto& e : graph.edges) e.weight /= emax;
  }
  return graph;
}

PixelGraph build_graph(const FeatureField& features, const FeatureVector& mu1,
                       const FeatureVector& mu2, const Mask& region, const BoundaryTerm& term,
                       bool normalized) {
  if (region.height != features.height || region.width != features.width) {
    throw std::invalid_argument("region dimensions do not match the feature field");
  }
  PixelGraph graph;
  graph.height = features.height;
  graph.width = features.width;
  graph.nodes.reserve(region.count());
  for (int r = 0; r < region.height; ++r) {
    for (int c = 0; c < region.width; ++c) {
      if (region.at(r, c)) graph.nodes.push_back(r * region.width + c);
    }
  }
  if (graph.nodes.empty()) throw std::invalid_argument("cannot build a graph over an empty region");

  TerminalWeights tw = terminal_weights(features, mu1, mu2, graph.nodes);
  graph.to_source = std::move(tw.to_source);
  graph.to_sink = std::move(tw.to_sink);
  graph.edges = edge_weights(features, graph.nodes, term);
  return normalized ? normalize(std::move(graph)) : graph;
}

}  // namespace tsgc
