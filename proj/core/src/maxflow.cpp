#include "tsgc/maxflow.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace tsgc {

namespace {

void check_capacity(double cap) {
  if (!(cap >= 0.0) || !std::isfinite(cap)) {
    throw std::invalid_argument("arc capacity must be finite and nonnegative");
  }
}

}  // namespace

FlowNetwork::FlowNetwork(int node_count) : node_count_(node_count) {
  if (node_count < 0) throw std::invalid_argument("node count must be nonnegative");
  adj_.resize(static_cast<std::size_t>(node_count) + 2);
}

void FlowNetwork::check_node(int id) const {
  if (id < 0 || id >= node_count_) throw std::invalid_argument("node id out of range");
}

void FlowNetwork::push_pair(int u, int v, double cap_uv, double cap_vu) {
  check_capacity(cap_uv);
  check_capacity(cap_vu);
  int a = static_cast<int>(arcs_.size());
  arcs_.push_back({v, cap_uv});
  arcs_.push_back({u, cap_vu});
  adj_[static_cast<std::size_t>(u)].push_back(a);
  adj_[static_cast<std::size_t>(v)].push_back(a + 1);
}

void FlowNetwork::add_undirected(int u, int v, double weight) {
  check_node(u);
  check_node(v);
  if (u == v) throw std::invalid_argument("self edges are not allowed");
  push_pair(u, v, weight, weight);
}

void FlowNetwork::add_arc(int u, int v, double cap) {
  check_node(u);
  check_node(v);
  if (u == v) throw std::invalid_argument("self edges are not allowed");
  push_pair(u, v, cap, 0.0);
}

void FlowNetwork::add_source_arc(int node, double cap) {
  check_node(node);
  push_pair(source(), node, cap, 0.0);
}

void FlowNetwork::add_sink_arc(int node, double cap) {
  check_node(node);
  push_pair(node, sink(), cap, 0.0);
}

namespace {

// Shared residual state: arc order and adjacency are copied verbatim from the
// network, so both solvers see identical deterministic scan orders.
struct Residual {
  std::vector<FlowNetwork::Arc> arcs;
  std::vector<int> first;     // CSR offsets, one past the last for node i at first[i+1]
  std::vector<int> arc_ids;   // outgoing arc indices in insertion order
  int total_nodes = 0;

  explicit Residual(const FlowNetwork& net)
      : arcs(net.arcs()), total_nodes(net.node_count() + 2) {
    first.resize(static_cast<std::size_t>(total_nodes) + 1, 0);
    const auto& adj = net.adjacency();
    for (int u = 0; u < total_nodes; ++u) {
      first[static_cast<std::size_t>(u) + 1] =
          first[static_cast<std::size_t>(u)] + static_cast<int>(adj[static_cast<std::size_t>(u)].size());
    }
    arc_ids.resize(arcs.size());
    std::size_t k = 0;
    for (int u = 0; u < total_nodes; ++u) {
      for (int a : adj[static_cast<std::size_t>(u)]) arc_ids[k++] = a;
    }
  }

  double cap(int a) const { return arcs[static_cast<std::size_t>(a)].cap; }
  int head(int a) const { return arcs[static_cast<std::size_t>(a)].head; }

  // Source side = residual reachability from the source.
  std::vector<CutResult::Side> sides(int node_count, int source) const {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(total_nodes), 0);
    std::deque<int> queue{source};
    seen[static_cast<std::size_t>(source)] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int i = first[static_cast<std::size_t>(u)]; i < first[static_cast<std::size_t>(u) + 1]; ++i) {
        int a = arc_ids[static_cast<std::size_t>(i)];
        if (arcs[static_cast<std::size_t>(a)].cap <= kSaturationEpsilon) continue;
        int v = arcs[static_cast<std::size_t>(a)].head;
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          queue.push_back(v);
        }
      }
    }
    std::vector<CutResult::Side> side(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i) {
      side[static_cast<std::size_t>(i)] =
          seen[static_cast<std::size_t>(i)] ? CutResult::Side::Source : CutResult::Side::Sink;
    }
    return side;
  }
};

class BkSolver {
 public:
  explicit BkSolver(const FlowNetwork& net)
      : res_(net),
        source_(net.source()),
        sink_(net.sink()),
        tree_(static_cast<std::size_t>(res_.total_nodes), kFree),
        parent_arc_(static_cast<std::size_t>(res_.total_nodes), -1),
        dist_(static_cast<std::size_t>(res_.total_nodes), 0),
        stamp_(static_cast<std::size_t>(res_.total_nodes), 0),
        in_active_(static_cast<std::size_t>(res_.total_nodes), 0),
        scan_pos_(res_.first.begin(), res_.first.end() - 1) {}

  CutResult run(int node_count, std::vector<double>* final_residual) {
    tree_[static_cast<std::size_t>(source_)] = kSource;
    tree_[static_cast<std::size_t>(sink_)] = kSink;
    stamp_[static_cast<std::size_t>(source_)] = time_;
    stamp_[static_cast<std::size_t>(sink_)] = time_;
    activate(source_);
    activate(sink_);

    double flow = 0.0;
    while (true) {
      int connecting = grow();
      if (connecting < 0) break;
      ++time_;
      flow += augment(connecting);
      adopt();
    }

    CutResult result;
    result.flow_value = flow;
    result.side = res_.sides(node_count, source_);
    if (final_residual != nullptr) {
      final_residual->resize(res_.arcs.size());
      for (std::size_t i = 0; i < res_.arcs.size(); ++i) (*final_residual)[i] = res_.arcs[i].cap;
    }
    return result;
  }

 private:
  static constexpr std::uint8_t kFree = 0;
  static constexpr std::uint8_t kSource = 1;
  static constexpr std::uint8_t kSink = 2;

  // (Re)activation restarts the node's arc scan: a neighbor may have been
  // freed behind the saved position.
  void activate(int p) {
    scan_pos_[static_cast<std::size_t>(p)] = res_.first[static_cast<std::size_t>(p)];
    if (!in_active_[static_cast<std::size_t>(p)]) {
      in_active_[static_cast<std::size_t>(p)] = 1;
      active_.push_back(p);
    }
  }

  // Residual capacity of arc a in the growth direction of tree t.
  double tree_cap(int a, std::uint8_t t) const {
    return t == kSource ? res_.cap(a) : res_.cap(a ^ 1);
  }

  // Returns an arc from an S-node to a T-node, or -1 when the trees can no
  // longer meet. Nodes stay queued across augmentations and resume scanning
  // where they left off.
  int grow() {
    while (!active_.empty()) {
      int p = active_.front();
      std::uint8_t t = tree_[static_cast<std::size_t>(p)];
      if (!in_active_[static_cast<std::size_t>(p)] || t == kFree) {
        in_active_[static_cast<std::size_t>(p)] = 0;
        active_.pop_front();
        continue;
      }
      int end = res_.first[static_cast<std::size_t>(p) + 1];
      int i = scan_pos_[static_cast<std::size_t>(p)];
      for (; i < end; ++i) {
        int a = res_.arc_ids[static_cast<std::size_t>(i)];
        if (tree_cap(a, t) <= kSaturationEpsilon) continue;
        int q = res_.head(a);
        std::uint8_t tq = tree_[static_cast<std::size_t>(q)];
        if (tq == kFree) {
          tree_[static_cast<std::size_t>(q)] = t;
          parent_arc_[static_cast<std::size_t>(q)] = a ^ 1;
          dist_[static_cast<std::size_t>(q)] = dist_[static_cast<std::size_t>(p)] + 1;
          stamp_[static_cast<std::size_t>(q)] = stamp_[static_cast<std::size_t>(p)];
          activate(q);
        } else if (tq != t) {
          // resume here: the arc may survive the augmentation
          scan_pos_[static_cast<std::size_t>(p)] = i;
          return t == kSource ? a : (a ^ 1);
        }
      }
      scan_pos_[static_cast<std::size_t>(p)] = end;
      in_active_[static_cast<std::size_t>(p)] = 0;
      active_.pop_front();
    }
    return -1;
  }

  double path_bottleneck(int connecting) const {
    double bottleneck = res_.cap(connecting);
    for (int x = res_.head(connecting ^ 1); x != source_;) {
      int a = parent_arc_[static_cast<std::size_t>(x)];
      bottleneck = std::min(bottleneck, res_.cap(a ^ 1));
      x = res_.head(a);
    }
    for (int x = res_.head(connecting); x != sink_;) {
      int a = parent_arc_[static_cast<std::size_t>(x)];
      bottleneck = std::min(bottleneck, res_.cap(a));
      x = res_.head(a);
    }
    return bottleneck;
  }

  double augment(int connecting) {
    double delta = path_bottleneck(connecting);
    push(connecting, delta);
    // Source-tree side first, then sink-tree side; orphans queue in path order.
    for (int x = res_.head(connecting ^ 1); x != source_;) {
      int a = parent_arc_[static_cast<std::size_t>(x)];
      push(a ^ 1, delta);
      if (res_.cap(a ^ 1) <= kSaturationEpsilon) make_orphan(x);
      x = res_.head(a);
    }
    for (int x = res_.head(connecting); x != sink_;) {
      int a = parent_arc_[static_cast<std::size_t>(x)];
      push(a, delta);
      if (res_.cap(a) <= kSaturationEpsilon) make_orphan(x);
      x = res_.head(a);
    }
    return delta;
  }

  void push(int a, double delta) {
    res_.arcs[static_cast<std::size_t>(a)].cap -= delta;
    res_.arcs[static_cast<std::size_t>(a ^ 1)].cap += delta;
  }

  void make_orphan(int x) {
    parent_arc_[static_cast<std::size_t>(x)] = -1;
    orphans_.push_back(x);
  }

  // Distance from q to its tree root through currently valid parents, or -1
  // if the chain is cut. Refreshes stamps along the walked chain.
  long origin_distance(int q) {
    long steps = 0;
    int y = q;
    while (true) {
      if (stamp_[static_cast<std::size_t>(y)] == time_) {
        steps += dist_[static_cast<std::size_t>(y)];
        break;
      }
      if (y == source_ || y == sink_) break;  // roots are always valid
      int a = parent_arc_[static_cast<std::size_t>(y)];
      if (a < 0) return -1;
      y = res_.head(a);
      ++steps;
    }
    long d = steps;
    for (int z = q; stamp_[static_cast<std::size_t>(z)] != time_;) {
      stamp_[static_cast<std::size_t>(z)] = time_;
      dist_[static_cast<std::size_t>(z)] = d--;
      if (z == source_ || z == sink_) break;
      z = res_.head(parent_arc_[static_cast<std::size_t>(z)]);
    }
    return steps;
  }

  void adopt() {
    while (!orphans_.empty()) {
      int x = orphans_.front();
      orphans_.pop_front();
      std::uint8_t t = tree_[static_cast<std::size_t>(x)];

      // Cheapest valid re-parent wins; candidates need residual toward x for
      // the source tree and away from x for the sink tree.
      int best_arc = -1;
      long best_d = std::numeric_limits<long>::max();
      for (int i = res_.first[static_cast<std::size_t>(x)];
           i < res_.first[static_cast<std::size_t>(x) + 1]; ++i) {
        int a = res_.arc_ids[static_cast<std::size_t>(i)];
        double rcap = t == kSource ? res_.cap(a ^ 1) : res_.cap(a);
        if (rcap <= kSaturationEpsilon) continue;
        int q = res_.head(a);
        if (tree_[static_cast<std::size_t>(q)] != t) continue;
        long d = origin_distance(q);
        if (d >= 0 && d < best_d) {
          best_d = d;
          best_arc = a;
        }
      }

      if (best_arc >= 0) {
        parent_arc_[static_cast<std::size_t>(x)] = best_arc;
        dist_[static_cast<std::size_t>(x)] = static_cast<long>(best_d) + 1;
        stamp_[static_cast<std::size_t>(x)] = time_;
        continue;
      }

      // No parent: free x, orphan its children, reactivate useful neighbors.
      tree_[static_cast<std::size_t>(x)] = kFree;
      for (int i = res_.first[static_cast<std::size_t>(x)];
           i < res_.first[static_cast<std::size_t>(x) + 1]; ++i) {
        int a = res_.arc_ids[static_cast<std::size_t>(i)];
        int q = res_.head(a);
        if (tree_[static_cast<std::size_t>(q)] != t) continue;
        int pa = parent_arc_[static_cast<std::size_t>(q)];
        if (pa >= 0 && res_.head(pa) == x) make_orphan(q);
        double rcap = t == kSource ? res_.cap(a ^ 1) : res_.cap(a);
        if (rcap > kSaturationEpsilon) activate(q);
      }
    }
  }

  Residual res_;
  int source_;
  int sink_;
  std::vector<std::uint8_t> tree_;
  std::vector<int> parent_arc_;
  std::vector<long> dist_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint8_t> in_active_;
  std::vector<int> scan_pos_;  // absolute CSR index of the next arc to scan
  std::deque<int> active_;
  std::deque<int> orphans_;
  std::uint64_t time_ = 1;
};

}  // namespace

CutResult max_flow(const FlowNetwork& net, std::vector<double>* final_residual) {
  BkSolver solver(net);
  return solver.run(net.node_count(), final_residual);
}

CutResult max_flow_reference(const FlowNetwork& net, std::vector<double>* final_residual) {
  Residual res(net);
  const int source = net.source(), sink = net.sink();
  std::vector<int> via(static_cast<std::size_t>(res.total_nodes), -1);
  double flow = 0.0;

  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::deque<int> queue{source};
    bool reached = false;
    while (!queue.empty() && !reached) {
      int u = queue.front();
      queue.pop_front();
      for (int i = res.first[static_cast<std::size_t>(u)];
           i < res.first[static_cast<std::size_t>(u) + 1]; ++i) {
        int a = res.arc_ids[static_cast<std::size_t>(i)];
        if (res.cap(a) <= kSaturationEpsilon) continue;
        int v = res.head(a);
        if (v == source || via[static_cast<std::size_t>(v)] >= 0) continue;
        via[static_cast<std::size_t>(v)] = a;
        if (v == sink) {
          reached = true;
          break;
        }
        queue.push_back(v);
      }
    }
    if (!reached) break;

    double delta = std::numeric_limits<double>::infinity();
    for (int v = sink; v != source;) {
      int a = via[static_cast<std::size_t>(v)];
      delta = std::min(delta, res.cap(a));
      v = res.head(a ^ 1);
    }
    for (int v = sink; v != source;) {
      int a = via[static_cast<std::size_t>(v)];
      res.arcs[static_cast<std::size_t>(a)].cap -= delta;
      res.arcs[static_cast<std::size_t>(a ^ 1)].cap += delta;
      v = res.head(a ^ 1);
    }
    flow += delta;
  }

  CutResult result;
  result.flow_value = flow;
  result.side = res.sides(net.node_count(), source);
  if (final_residual != nullptr) {
    final_residual->resize(res.arcs.size());
    for (std::size_t i = 0; i < res.arcs.size(); ++i) (*final_residual)[i] = res.arcs[i].cap;
  }
  return result;
}

FlowNetwork to_flow_network(const PixelGraph& graph, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  FlowNetwork net(static_cast<int>(graph.node_count()));
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    net.add_source_arc(static_cast<int>(i), graph.to_source[i]);
    net.add_sink_arc(static_cast<int>(i), graph.to_sink[i]);
  }
  for (const auto& e : graph.edges) net.add_undirected(e.u, e.v, lambda * e.weight);
  return net;
}

std::vector<std::uint8_t> cut_to_labels(const CutResult& cut, const PixelGraph& graph) {
  if (cut.side.size() != graph.node_count()) {
    throw std::invalid_argument("cut result does not match the graph's node count");
  }
  std::vector<std::uint8_t> labels(cut.side.size());
  for (std::size_t i = 0; i < cut.side.size(); ++i) {
    labels[i] = cut.side[i] == CutResult::Side::Source ? 1 : 2;
  }
  return labels;
}

}  // namespace tsgc
