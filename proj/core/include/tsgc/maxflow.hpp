#pragma once

#include <cstdint>

#include "tsgc/graphbuild.hpp"

namespace tsgc {

// Residual capacities at or below this are treated as saturated. Weights are
// normalized to O(1), so a fixed absolute threshold is safe.
inline constexpr double kSaturationEpsilon = 1e-12;

// Directed flow network over node_count() non-terminal nodes plus two virtual
// terminals. Arcs are created in reverse-partner pairs (partner index = i ^ 1);
// an undirected n-link of weight w becomes one pair with capacity w each way.
class FlowNetwork {
 public:
  struct Arc {
    int head = 0;
    double cap = 0.0;
  };

  explicit FlowNetwork(int node_count);

  int node_count() const { return node_count_; }
  int source() const { return node_count_; }
  int sink() const { return node_count_ + 1; }

  void add_undirected(int u, int v, double weight);
  void add_arc(int u, int v, double cap);  // zero-capacity reverse partner
  void add_source_arc(int node, double cap);
  void add_sink_arc(int node, double cap);

  const std::vector<Arc>& arcs() const { return arcs_; }
  // Outgoing arc indices per internal node id (terminals included).
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }

 private:
  void push_pair(int u, int v, double cap_uv, double cap_vu);
  void check_node(int id) const;

  int node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

struct CutResult {
  enum class Side : std::uint8_t { Source, Sink };

  double flow_value = 0.0;
  std::vector<Side> side;  // per non-terminal node

  bool source_side(int node) const { return side[static_cast<std::size_t>(node)] == Side::Source; }
};

// Maximum s-t flow in the tree-growth style: search trees from both terminals
// with growth, augmentation and adoption phases; FIFO active and orphan
// queues. The side assignment is residual reachability from the source, which
// picks the source-minimal minimum cut. When `final_residual` is given it
// receives the residual capacity of every arc, aligned with arcs().
CutResult max_flow(const FlowNetwork& net, std::vector<double>* final_residual = nullptr);

// Plain BFS augmenting-path solver; slow, kept as an independent oracle.
CutResult max_flow_reference(const FlowNetwork& net,
                             std::vector<double>* final_residual = nullptr);

// Terminal weights become t-link arcs, edges become n-link pairs scaled by
// lambda, so the minimum cut minimizes data + lambda * perimeter.
FlowNetwork to_flow_network(const PixelGraph& graph, double lambda = 1.0);

// Source side -> label 1 (mu1's label), sink side -> label 2.
std::vector<std::uint8_t> cut_to_labels(const CutResult& cut, const PixelGraph& graph);

}  // namespace tsgc
