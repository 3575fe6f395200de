#include "tsgc/graphbuild.hpp"

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

using namespace tsgc;

namespace {

FeatureField field_from(int h, int w, int dim, const std::vector<float>& values) {
  FeatureField f;
  f.height = h;
  f.width = w;
  f.dim = dim;
  f.values = values;
  return f;
}

FeatureField random_field(std::uint32_t seed, int h, int w, int dim) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 50.0f);
  FeatureField f;
  f.height = h;
  f.width = w;
  f.dim = dim;
  f.values.resize(static_cast<std::size_t>(h) * w * dim);
  for (float& v : f.values) v = dist(rng);
  return f;
}

Mask full_mask(int h, int w) {
  return Mask{h, w, std::vector<std::uint8_t>(static_cast<std::size_t>(h) * w, 1)};
}

// Test-side norm, independent of the library helpers.
double norm_to(const FeatureField& f, int r, int c, const std::vector<double>& mu) {
  double s = 0.0;
  const float* v = f.vec(r, c);
  for (std::size_t d = 0; d < mu.size(); ++d) {
    double diff = v[d] - mu[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("region_mean averages entrywise") {
  FeatureField f = field_from(1, 2, 2, {1, 3, 3, 5});
  Mask roi = full_mask(1, 2);
  FeatureVector mu = region_mean(f, roi);
  CHECK(mu[0] == doctest::Approx(2.0));
  CHECK(mu[1] == doctest::Approx(4.0));

  Mask single = Mask::zeros(1, 2);
  single.set(0, 1, true);
  FeatureVector one = region_mean(f, single);
  CHECK(one[0] == doctest::Approx(3.0));
  CHECK(one[1] == doctest::Approx(5.0));
}

TEST_CASE("region_mean matches a naive sum/count oracle") {
  FeatureField f = random_field(5, 6, 7, 4);
  std::mt19937 rng(6);
  Mask roi = Mask::zeros(6, 7);
  for (auto& b : roi.bits) b = rng() % 3 == 0;
  roi.set(2, 2, true);  // keep it nonempty

  FeatureVector mu = region_mean(f, roi);
  for (int d = 0; d < f.dim; ++d) {
    double sum = 0.0;
    int count = 0;
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 7; ++c) {
        if (!roi.at(r, c)) continue;
        sum += f.vec(r, c)[d];
        ++count;
      }
    }
    CHECK(mu[static_cast<std::size_t>(d)] == doctest::Approx(sum / count).epsilon(1e-12));
  }
}

TEST_CASE("region_mean error cases") {
  FeatureField f = random_field(7, 3, 3, 2);
  CHECK_THROWS_AS(region_mean(f, Mask::zeros(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(region_mean(f, Mask::zeros(2, 3)), std::invalid_argument);
}

TEST_CASE("terminal weights are cross-assigned") {
  FeatureField f = field_from(1, 1, 2, {1, 1});
  std::vector<int> nodes{0};
  TerminalWeights tw = terminal_weights(f, {0, 0}, {2, 2}, nodes);
  CHECK(tw.to_source[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(tw.to_sink[0] == doctest::Approx(std::sqrt(2.0)));

  // a pixel equal to mu1 is free to label 1
  TerminalWeights tw2 = terminal_weights(f, {1, 1}, {5, 5}, nodes);
  CHECK(tw2.to_sink[0] == 0.0);
  CHECK(tw2.to_source[0] == doctest::Approx(std::sqrt(32.0)));

  CHECK_THROWS_AS(terminal_weights(f, {1}, {2, 2}, nodes), std::invalid_argument);
}

TEST_CASE("severed t-links reproduce the data term for every labeling") {
  FeatureField f = random_field(9, 2, 2, 3);
  std::vector<int> nodes{0, 1, 2, 3};
  FeatureVector mu1{10, 20, 30}, mu2{5, 0, 40};
  TerminalWeights tw = terminal_weights(f, mu1, mu2, nodes);

  for (int bits = 0; bits < 16; ++bits) {
    double severed = 0.0, data = 0.0;
    for (int i = 0; i < 4; ++i) {
      bool label1 = (bits >> i) & 1;
      // label 1 keeps the source link and severs the sink link
      severed += label1 ? tw.to_sink[static_cast<std::size_t>(i)]
                        : tw.to_source[static_cast<std::size_t>(i)];
      data += norm_to(f, i / 2, i % 2, label1 ? mu1 : mu2);
    }
    CHECK(severed == doctest::Approx(data).epsilon(1e-12));
  }
}

TEST_CASE("proposed edge weights cap at one") {
  // two pixels, distance 2 then 0.5 then 0
  FeatureField far = field_from(1, 2, 1, {0, 2});
  auto edges = edge_weights(far, std::vector<int>{0, 1}, BoundaryTerm::proposed());
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].weight == doctest::Approx(0.5));

  FeatureField near = field_from(1, 2, 1, {0, 0.5f});
  CHECK(edge_weights(near, std::vector<int>{0, 1}, BoundaryTerm::proposed())[0].weight ==
        doctest::Approx(1.0));

  FeatureField same = field_from(1, 2, 1, {3, 3});
  CHECK(edge_weights(same, std::vector<int>{0, 1}, BoundaryTerm::proposed())[0].weight == 1.0);
}

TEST_CASE("gaussian edge weights include the pixel distance") {
  // identical diagonal neighbors: exp(0) / sqrt(2)
  FeatureField f = field_from(2, 2, 1, {1, 9, 9, 1});
  std::vector<int> nodes{0, 3};  // only the main diagonal pair
  auto edges = edge_weights(f, nodes, BoundaryTerm::gaussian(1.0));
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].weight == doctest::Approx(1.0 / std::sqrt(2.0)));

  // axis neighbors at distance d: exp(-d^2 / 2 sigma^2)
  FeatureField g = field_from(1, 2, 1, {0, 2});
  auto axis = edge_weights(g, std::vector<int>{0, 1}, BoundaryTerm::gaussian(2.0));
  CHECK(axis[0].weight == doctest::Approx(std::exp(-4.0 / 8.0)));

  CHECK_THROWS_AS(edge_weights(g, std::vector<int>{0, 1}, BoundaryTerm::gaussian(0.0)),
                  std::invalid_argument);
}

TEST_CASE("normalize rescales by group maxima") {
  PixelGraph g;
  g.height = 1;
  g.width = 4;
  g.nodes = {0, 1, 2, 3};
  g.to_source = {2, 1, 0, 0};
  g.to_sink = {4, 8, 0, 0};
  g.edges = {{0, 1, 0.5, false}, {1, 2, 0.25, false}};
  PixelGraph n = normalize(g);
  CHECK(n.to_source[0] == doctest::Approx(0.25));
  CHECK(n.to_sink[0] == doctest::Approx(0.5));
  CHECK(n.to_source[1] == doctest::Approx(0.125));
  CHECK(n.to_sink[1] == doctest::Approx(1.0));
  CHECK(n.edges[0].weight == doctest::Approx(1.0));
  CHECK(n.edges[1].weight == doctest::Approx(0.5));

  PixelGraph zero;
  zero.height = 1;
  zero.width = 2;
  zero.nodes = {0, 1};
  zero.to_source = {0, 0};
  zero.to_sink = {0, 0};
  zero.edges = {{0, 1, 0.0, false}};
  PixelGraph nz = normalize(zero);
  CHECK(nz.to_source == std::vector<double>{0, 0});
  CHECK(nz.edges[0].weight == 0.0);
}

TEST_CASE("build_graph node and edge structure") {
  FeatureField f = random_field(13, 3, 3, 2);
  FeatureVector mu1{1, 1}, mu2{2, 2};

  Mask two = Mask::zeros(3, 3);
  two.set(0, 0, true);
  two.set(0, 1, true);
  PixelGraph pair = build_graph(f, mu1, mu2, two, BoundaryTerm::proposed());
  CHECK(pair.node_count() == 2);
  CHECK(pair.edges.size() == 1);

  // full 3x3 grid: 12 axis pairs + 8 diagonal pairs
  PixelGraph grid = build_graph(f, mu1, mu2, full_mask(3, 3), BoundaryTerm::proposed());
  CHECK(grid.node_count() == 9);
  CHECK(grid.edges.size() == 20);
  int diagonals = 0;
  for (const auto& e : grid.edges) diagonals += e.diagonal;
  CHECK(diagonals == 8);

  Mask one = Mask::zeros(3, 3);
  one.set(2, 2, true);
  PixelGraph single = build_graph(f, mu1, mu2, one, BoundaryTerm::proposed());
  CHECK(single.node_count() == 1);
  CHECK(single.edges.empty());

  CHECK_THROWS_AS(build_graph(f, mu1, mu2, Mask::zeros(3, 3), BoundaryTerm::proposed()),
                  std::invalid_argument);
}

TEST_CASE("edge lists match an independent 8-adjacency enumeration") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    FeatureField f = random_field(100 + trial, 5, 5, 2);
    Mask region = Mask::zeros(5, 5);
    for (auto& b : region.bits) b = rng() % 2;
    region.set(0, 0, true);
    PixelGraph g = build_graph(f, {0, 0}, {1, 1}, region, BoundaryTerm::proposed());

    std::set<std::pair<int, int>> expected;
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) {
        if (!region.at(r, c)) continue;
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= 5 || cc < 0 || cc >= 5 || !region.at(rr, cc)) continue;
            int a = r * 5 + c, b = rr * 5 + cc;
            expected.insert({std::min(a, b), std::max(a, b)});
          }
        }
      }
    }

    std::set<std::pair<int, int>> actual;
    for (const auto& e : g.edges) {
      CHECK(e.u < e.v);
      auto inserted = actual.insert({g.nodes[static_cast<std::size_t>(e.u)],
                                     g.nodes[static_cast<std::size_t>(e.v)]});
      CHECK(inserted.second);  // no duplicates
    }
    CHECK(actual == expected);
  }
}

TEST_CASE("normalized graphs live in [0,1] and scale out of feature units") {
  FeatureField f = random_field(42, 4, 4, 3);
  FeatureVector mu1{5, 5, 5}, mu2{20, 10, 0};
  Mask region = full_mask(4, 4);

  PixelGraph raw = build_graph(f, mu1, mu2, region, BoundaryTerm::proposed(), false);
  for (const auto& e : raw.edges) {
    CHECK(e.weight > 0.0);
    CHECK(e.weight <= 1.0);
  }

  PixelGraph norm = build_graph(f, mu1, mu2, region, BoundaryTerm::proposed());
  double tmax = 0.0, emax = 0.0;
  for (std::size_t i = 0; i < norm.node_count(); ++i) {
    CHECK(norm.to_source[i] >= 0.0);
    CHECK(norm.to_source[i] <= 1.0 + 1e-15);
    CHECK(norm.to_sink[i] <= 1.0 + 1e-15);
    tmax = std::max({tmax, norm.to_source[i], norm.to_sink[i]});
  }
  for (const auto& e : norm.edges) emax = std::max(emax, e.weight);
  CHECK(tmax == doctest::Approx(1.0));
  CHECK(emax == doctest::Approx(1.0));

  // scaling all features and means by c scales raw terminals by c and leaves
  // normalized terminals unchanged
  const double c = 3.5;
  FeatureField scaled = f;
  for (float& v : scaled.values) v = static_cast<float>(v * c);
  FeatureVector mu1c = mu1, mu2c = mu2;
  for (double& v : mu1c) v *= c;
  for (double& v : mu2c) v *= c;

  PixelGraph raw_scaled = build_graph(scaled, mu1c, mu2c, region, BoundaryTerm::proposed(), false);
  PixelGraph norm_scaled = build_graph(scaled, mu1c, mu2c, region, BoundaryTerm::proposed());
  for (std::size_t i = 0; i < raw.node_count(); ++i) {
    CHECK(raw_scaled.to_source[i] == doctest::Approx(c * raw.to_source[i]).epsilon(1e-6));
    CHECK(norm_scaled.to_source[i] == doctest::Approx(norm.to_source[i]).epsilon(1e-6));
    CHECK(norm_scaled.to_sink[i] == doctest::Approx(norm.to_sink[i]).epsilon(1e-6));
  }
}
