#pragma once

#include <iosfwd>

#include "tsgc/maxflow.hpp"

namespace tsgc {

// DIMACS max-flow text format: "p max N M", "n ID s", "n ID t" and one
// "a FROM TO CAP" line per positive-capacity arc, ids 1-based. Capacities are
// written with full double precision. Used for cross-checking cuts against
// external solvers.
void write_dimacs(const FlowNetwork& net, std::ostream& out);
void write_dimacs(const PixelGraph& graph, std::ostream& out);

// Throws IoError on malformed input. Arcs touching the declared source/sink
// become terminal arcs; remaining ids are densely renumbered in order.
FlowNetwork read_dimacs(std::istream& in);

}  // namespace tsgc
