#include "tsgc/dimacs.hpp"

#include <random>
#include <sstream>

#include "doctest.h"

using namespace tsgc;

TEST_CASE("hand-written DIMACS network solves to the known flow") {
  std::istringstream in(
      "c tiny diamond\n"
      "p max 4 5\n"
      "n 1 s\n"
      "n 4 t\n"
      "a 1 2 3\n"
      "a 1 3 2\n"
      "a 2 3 1\n"
      "a 2 4 2\n"
      "a 3 4 3\n");
  FlowNetwork net = read_dimacs(in);
  CHECK(net.node_count() == 2);
  CHECK(max_flow(net).flow_value == doctest::Approx(5.0));
  CHECK(max_flow_reference(net).flow_value == doctest::Approx(5.0));
}

TEST_CASE("write/read round trip preserves the flow value") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    FlowNetwork net(n);
    for (int i = 0; i < n; ++i) {
      net.add_source_arc(i, static_cast<double>(rng() % 8));
      net.add_sink_arc(i, static_cast<double>(rng() % 8));
    }
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng() % 2 == 0) net.add_undirected(u, v, 0.25 * static_cast<double>(rng() % 9));
      }
    }
    std::ostringstream out;
    write_dimacs(net, out);
    std::istringstream in(out.str());
    FlowNetwork back = read_dimacs(in);
    CHECK(back.node_count() == n);
    CHECK(max_flow(back).flow_value == doctest::Approx(max_flow(net).flow_value).epsilon(1e-12));
  }
}

TEST_CASE("pixel graph dump declares both terminals") {
  PixelGraph graph;
  graph.height = 1;
  graph.width = 2;
  graph.nodes = {0, 1};
  graph.to_source = {0.5, 0.0};
  graph.to_sink = {0.25, 1.0};
  graph.edges = {{0, 1, 0.75, false}};

  std::ostringstream out;
  write_dimacs(graph, out);
  std::string text = out.str();
  CHECK(text.find("p max 4") == 0);
  CHECK(text.find("n 3 s") != std::string::npos);
  CHECK(text.find("n 4 t") != std::string::npos);

  std::istringstream in(text);
  FlowNetwork net = read_dimacs(in);
  CHECK(max_flow(net).flow_value ==
        doctest::Approx(max_flow(to_flow_network(graph)).flow_value).epsilon(1e-12));
}

TEST_CASE("malformed DIMACS input is rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_dimacs(in);
  };
  CHECK_THROWS_AS(parse("a 1 2 3\n"), IoError);                              // no problem line
  CHECK_THROWS_AS(parse("p max 3 1\nn 1 s\na 1 2 1\n"), IoError);            // no sink
  CHECK_THROWS_AS(parse("p max 3 1\nn 1 s\nn 1 t\na 1 2 1\n"), IoError);     // s == t
  CHECK_THROWS_AS(parse("p max 3 1\nn 1 s\nn 3 t\na 1 9 1\n"), IoError);     // id range
  CHECK_THROWS_AS(parse("p max 3 1\nn 1 s\nn 3 t\na 1 3 1\n"), IoError);     // s -> t arc
  CHECK_THROWS_AS(parse("p max 3 1\nn 1 s\nn 3 t\na 1 2 -1\n"), IoError);    // negative cap
  CHECK_THROWS_AS(parse("p max 3 1\nn 1 s\nn 3 t\nq 1 2 1\n"), IoError);     // unknown kind
}
