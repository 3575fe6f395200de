#include "tsgc/dimacs.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tsgc {

void write_dimacs(const FlowNetwork& net, std::ostream& out) {
  const auto& arcs = net.arcs();
  std::size_t live = 0;
  for (const auto& a : arcs) {
    if (a.cap > 0.0) ++live;
  }
  out << "p max " << net.node_count() + 2 << " " << live << "\n";
  out << "n " << net.source() + 1 << " s\n";
  out << "n " << net.sink() + 1 << " t\n";
  out.precision(17);
  // Arc pairs share adjacent indices; the tail of arc i is the head of i^1.
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].cap <= 0.0) continue;
    int tail = arcs[i ^ 1].head;
    out << "a " << tail + 1 << " " << arcs[i].head + 1 << " " << arcs[i].cap << "\n";
  }
}

void write_dimacs(const PixelGraph& graph, std::ostream& out) {
  write_dimacs(to_flow_network(graph), out);
}

FlowNetwork read_dimacs(std::istream& in) {
  long declared_nodes = -1;
  long source_id = -1, sink_id = -1;
  struct RawArc {
    long from, to;
    double cap;
  };
  std::vector<RawArc> raw;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    char kind = 0;
    if (!(ls >> kind)) continue;  // blank line
    switch (kind) {
      case 'c':
        break;
      case 'p': {
        std::string problem;
        long arcs = 0;
        if (!(ls >> problem >> declared_nodes >> arcs) || problem != "max" || declared_nodes < 2) {
          throw IoError("malformed DIMACS problem line at line " + std::to_string(lineno));
        }
        break;
      }
      case 'n': {
        long id = 0;
        char which = 0;
        if (!(ls >> id >> which) || id < 1 || id > declared_nodes) {
          throw IoError("malformed DIMACS node line at line " + std::to_string(lineno));
        }
        if (which == 's') {
          source_id = id;
        } else if (which == 't') {
          sink_id = id;
        } else {
          throw IoError("unknown DIMACS terminal at line " + std::to_string(lineno));
        }
        break;
      }
      case 'a': {
        RawArc arc{};
        if (!(ls >> arc.from >> arc.to >> arc.cap) || arc.from < 1 || arc.to < 1 ||
            arc.from > declared_nodes || arc.to > declared_nodes || !(arc.cap >= 0.0) ||
            !std::isfinite(arc.cap)) {
          throw IoError("malformed DIMACS arc line at line " + std::to_string(lineno));
        }
        raw.push_back(arc);
        break;
      }
      default:
        throw IoError("unknown DIMACS line kind at line " + std::to_string(lineno));
    }
  }
  if (declared_nodes < 2) throw IoError("DIMACS input has no problem line");
  if (source_id < 1 || sink_id < 1) throw IoError("DIMACS input lacks source or sink");
  if (source_id == sink_id) throw IoError("DIMACS source and sink coincide");

  // Dense renumbering of the non-terminal ids, preserving order.
  auto internal = [&](long id) {
    return static_cast<int>(id - 1 - (id > source_id ? 1 : 0) - (id > sink_id ? 1 : 0));
  };

  FlowNetwork net(static_cast<int>(declared_nodes - 2));
  for (const auto& arc : raw) {
    bool from_source = arc.from == source_id;
    bool to_sink = arc.to == sink_id;
    if (arc.to == source_id || arc.from == sink_id) {
      throw IoError("DIMACS arcs into the source or out of the sink are unsupported");
    }
    if (from_source && to_sink) {
      throw IoError("DIMACS source-to-sink arcs are unsupported");
    }
    if (from_source) {
      net.add_source_arc(internal(arc.to), arc.cap);
    } else if (to_sink) {
      net.add_sink_arc(internal(arc.from), arc.cap);
    } else {
      net.add_arc(internal(arc.from), internal(arc.to), arc.cap);
    }
  }
  return net;
}

}  // namespace tsgc
