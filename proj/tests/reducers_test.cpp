#include <gtest/gtest.h>

#include "offcon/offcon.hpp"
#include "support.hpp"

using namespace offcon;
using support::Rng;

namespace {

MultiGraph from_edges(std::initializer_list<std::pair<VertexId, VertexId>> es) {
  MultiGraph g;
  for (auto [u, v] : es) g.add_edge(u, v);
  return g;
}

MultiGraph k4(VertexId base = 0) {
  MultiGraph g;
  for (VertexId a = 0; a < 4; ++a) {
    for (VertexId b = a + 1; b < 4; ++b) g.add_edge(base + a, base + b);
  }
  return g;
}

MultiGraph path(VertexId n) {
  MultiGraph g;
  for (VertexId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

void expect_equivalent(const MultiGraph& g, const ReducedGraph& h, std::span<const VertexId> act, QueryMode m) {
  auto r = check_equivalence(g, h, act, m);
  EXPECT_TRUE(r.ok) << short_name(m) << ": " << r.witness;
}

struct Instance {
  MultiGraph g;
  std::vector<VertexId> active;
};

Instance random_instance(Rng& rng) {
  auto n = static_cast<std::uint32_t>(2 + support::below(rng, 8));
  Instance in;
  in.g = support::below(rng, 2)
             ? support::random_multigraph(rng, n, static_cast<std::uint32_t>(support::below(rng, 2 * n + 3)))
             : support::random_connected(rng, n, static_cast<std::uint32_t>(support::below(rng, n + 2)));
  auto k = 1 + support::below(rng, std::min<std::uint64_t>(n, 4));
  for (std::uint64_t i = 0; i < k; ++i) in.active.push_back(support::below(rng, n));
  return in;
}

}  // namespace

TEST(Reduce, EmptyGraphNoActives) {
  MultiGraph g;
  auto h = reduce(QueryMode::TwoEdge, g, {});
  EXPECT_EQ(h.graph.vertex_count(), 0u);
  EXPECT_EQ(h.graph.edge_count(), 0u);
}

TEST(Reduce, TriangleCollapsesForTwoEdge) {
  auto g = from_edges({{1, 2}, {2, 3}, {3, 1}});
  std::vector<VertexId> act{1, 2};
  auto h = reduce(QueryMode::TwoEdge, g, act);
  EXPECT_EQ(h.graph.vertex_count(), 1u);
  EXPECT_EQ(h.graph.edge_count(), 0u);
  EXPECT_EQ(h.f.at(1), h.f.at(2));
}

TEST(Reduce, TwoTrianglesAcrossBridge) {
  auto g = from_edges({{1, 2}, {2, 3}, {3, 1}, {3, 4}, {4, 5}, {5, 6}, {6, 4}});
  std::vector<VertexId> act{1, 6};
  auto h = reduce(QueryMode::TwoEdge, g, act);
  EXPECT_EQ(h.graph.vertex_count(), 2u);
  EXPECT_EQ(h.graph.edge_count(), 1u);
  expect_equivalent(g, h, act, QueryMode::TwoEdge);
}

TEST(Reduce, LongPathShrinks) {
  auto g = path(10);
  std::vector<VertexId> act{0, 9};
  for (auto m : {QueryMode::TwoEdge, QueryMode::ThreeEdge}) {
    auto h = reduce(m, g, act);
    EXPECT_EQ(h.graph.vertex_count(), 2u) << short_name(m);
    EXPECT_EQ(h.graph.edge_count(), 1u) << short_name(m);
    expect_equivalent(g, h, act, m);
  }
  // vertex modes must keep an inner cut vertex; pruning pairs of inactive
  // blocks stops at a three-edge path
  for (auto m : {QueryMode::Biconnected, QueryMode::Triconnected}) {
    auto h = reduce(m, g, act);
    EXPECT_EQ(h.graph.vertex_count(), 4u) << short_name(m);
    EXPECT_EQ(h.graph.edge_count(), 3u) << short_name(m);
    expect_equivalent(g, h, act, m);
  }
}

TEST(ReduceBicon, PathKeepsASeparatingVertex) {
  auto g = path(5);
  std::vector<VertexId> act{0, 4};
  auto h = reduce_bicon(g, act);
  expect_equivalent(g, h, act, QueryMode::Biconnected);
  EXPECT_EQ(h.graph.edge_count(), 3u);
  EXPECT_EQ(support::brute_articulation(h.graph).size(), 2u);
  EXPECT_FALSE(pair_query(h.graph, {QueryMode::Biconnected, h.f.at(0), h.f.at(4)}));

  // a bare edge between the ends would make them adjacent, hence biconnected
  ReducedGraph edge;
  edge.graph.add_edge(0, 4);
  edge.f.insert(0, 0);
  edge.f.insert(4, 4);
  edge.f.seal();
  EXPECT_FALSE(check_equivalence(g, edge, act, QueryMode::Biconnected).ok);
}

TEST(ReduceBicon, K4CollapsesAroundActives) {
  auto g = k4();
  std::vector<VertexId> act{0, 1};
  auto h = reduce_bicon(g, act);
  EXPECT_NE(h.f.at(0), h.f.at(1));
  EXPECT_TRUE(support::brute_biconnected(h.graph));
  EXPECT_LE(h.graph.vertex_count(), 3u);
  expect_equivalent(g, h, act, QueryMode::Biconnected);
}

TEST(ReduceBicon, SingleEdgeUnchanged) {
  auto g = from_edges({{1, 2}});
  std::vector<VertexId> act{1, 2};
  auto h = reduce_bicon(g, act);
  EXPECT_EQ(h.graph.vertex_count(), 2u);
  EXPECT_EQ(h.graph.edge_count(), 1u);
  EXPECT_NE(h.f.at(1), h.f.at(2));
}

TEST(Reduce3Edge, FiveCycleBecomesDoubleEdge) {
  auto g = from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  std::vector<VertexId> act{0, 2};
  auto h = reduce_3edge(g, act);
  EXPECT_EQ(h.graph.vertex_count(), 2u);
  EXPECT_EQ(h.graph.edge_count(), 2u);
  expect_equivalent(g, h, act, QueryMode::ThreeEdge);
}

TEST(Reduce3Edge, K4MergesActives) {
  auto g = k4();
  std::vector<VertexId> act{0, 3};
  auto h = reduce_3edge(g, act);
  EXPECT_EQ(h.graph.vertex_count(), 1u);
  EXPECT_EQ(h.f.at(0), h.f.at(3));
}

TEST(ReduceTricon, K4CollapsesAroundActives) {
  auto g = k4();
  std::vector<VertexId> act{0, 1};
  auto h = reduce_tricon(g, act);
  EXPECT_NE(h.f.at(0), h.f.at(1));
  EXPECT_TRUE(pair_query(h.graph, {QueryMode::Triconnected, h.f.at(0), h.f.at(1)}));
  EXPECT_LE(h.size(), g.size());
  expect_equivalent(g, h, act, QueryMode::Triconnected);
}

TEST(ReduceTricon, K4WithOneActiveAndAPendantPath) {
  auto g = k4();
  g.add_edge(3, 7);
  g.add_edge(7, 8);
  std::vector<VertexId> act{0, 8};
  auto h = reduce_tricon(g, act);
  expect_equivalent(g, h, act, QueryMode::Triconnected);
  EXPECT_FALSE(pair_query(h.graph, {QueryMode::Biconnected, h.f.at(0), h.f.at(8)}));
}

TEST(ReduceTricon, TwoK4sThroughCutVertex) {
  auto g = k4(0);
  for (const auto& e : k4(3).edges()) g.add_edge(e.u, e.v);  // shares vertex 3
  std::vector<VertexId> act{0, 6};
  auto h = reduce_tricon(g, act);
  expect_equivalent(g, h, act, QueryMode::Triconnected);
  EXPECT_FALSE(pair_query(h.graph, {QueryMode::Biconnected, h.f.at(0), h.f.at(6)}));
}

TEST(ReduceTricon, KeepsAtMostThreeOfFiveParallelComponents) {
  // five internally disjoint paths 0-x-y-1
  MultiGraph g;
  for (VertexId i = 0; i < 5; ++i) {
    VertexId x = 10 + 2 * i, y = 11 + 2 * i;
    g.add_edge(0, x);
    g.add_edge(x, y);
    g.add_edge(y, 1);
  }
  std::vector<VertexId> act{0, 1};
  auto h = reduce_tricon(g, act);
  expect_equivalent(g, h, act, QueryMode::Triconnected);
  auto a = h.f.at(0), b = h.f.at(1);
  std::size_t components = 0;
  MultiGraph rest;
  for (auto v : h.graph.vertices()) {
    if (v != a && v != b) rest.add_vertex(v);
  }
  for (const auto& e : h.graph.edges()) {
    bool ends_a = e.u == a || e.u == b, ends_b = e.v == a || e.v == b;
    if (ends_a && ends_b) ++components;  // a direct edge is a component of its own
    else if (!ends_a && !ends_b) rest.add_edge(e.key, e.u, e.v);
  }
  components += connected_components(rest).count;
  EXPECT_GE(components, 2u);
  EXPECT_LE(components, 3u);
}

TEST(Reduce, GridWithThreeCorners) {
  MultiGraph g;
  auto at = [](VertexId r, VertexId c) { return 3 * r + c; };
  for (VertexId r = 0; r < 3; ++r) {
    for (VertexId c = 0; c < 3; ++c) {
      if (c + 1 < 3) g.add_edge(at(r, c), at(r, c + 1));
      if (r + 1 < 3) g.add_edge(at(r, c), at(r + 1, c));
    }
  }
  std::vector<VertexId> act{at(0, 0), at(0, 2), at(2, 2)};
  for (auto m : kAllModes) expect_equivalent(g, reduce(m, g, act), act, m);
}

TEST(Reduce, InactiveComponentsAreDropped) {
  auto g = from_edges({{1, 2}, {2, 3}, {3, 1}, {7, 8}, {8, 9}, {9, 7}});
  std::vector<VertexId> act{1, 2};
  for (auto m : kAllModes) {
    auto h = reduce(m, g, act);
    EXPECT_FALSE(h.f.contains(7));
    EXPECT_LE(h.graph.vertex_count(), 4u) << short_name(m);
    expect_equivalent(g, h, act, m);
  }
}

TEST(Reduce, IsolatedActivesGetImages) {
  MultiGraph g;
  std::vector<VertexId> act{4, 5};
  for (auto m : kAllModes) {
    auto h = reduce(m, g, act);
    ASSERT_TRUE(h.f.contains(4));
    ASSERT_TRUE(h.f.contains(5));
    EXPECT_NE(h.f.at(4), h.f.at(5));
  }
}

TEST(Reduce, RandomCorpusIsEquivalentAndSmall) {
  Rng rng(2024);
  ReduceConfig config;
  for (int it = 0; it < 150; ++it) {
    auto in = random_instance(rng);
    for (auto m : kAllModes) {
      auto h = reduce(m, in.g, in.active, config);
      auto k = std::max<std::size_t>(1, count_distinct(in.active));
      ASSERT_LE(static_cast<double>(h.size()), config.bound(m) * static_cast<double>(k));
      auto r = check_equivalence(in.g, h, in.active, m);
      ASSERT_TRUE(r.ok) << short_name(m) << " iteration " << it << ": " << r.witness;
    }
  }
}

TEST(Reduce, Deterministic) {
  Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    auto in = random_instance(rng);
    for (auto m : kAllModes) {
      auto a = reduce(m, in.g, in.active), b = reduce(m, in.g, in.active);
      ASSERT_TRUE(std::equal(a.graph.edges().begin(), a.graph.edges().end(), b.graph.edges().begin(),
                             b.graph.edges().end()));
      ASSERT_TRUE(std::equal(a.graph.vertices().begin(), a.graph.vertices().end(), b.graph.vertices().begin(),
                             b.graph.vertices().end()));
      ASSERT_TRUE(std::equal(a.f.begin(), a.f.end(), b.f.begin(), b.f.end()));
    }
  }
}

TEST(Reduce, SecondPassDoesNotGrow) {
  Rng rng(8);
  for (int it = 0; it < 100; ++it) {
    auto in = random_instance(rng);
    for (auto m : kAllModes) {
      auto once = reduce(m, in.g, in.active);
      std::vector<VertexId> image;
      for (auto a : in.active) image.push_back(once.f.at(a));
      auto twice = reduce(m, once.graph, image);
      ASSERT_LE(twice.size(), once.size()) << short_name(m) << " iteration " << it;
    }
  }
}

TEST(Reduce, SizeCeilingIsEnforced) {
  auto g = k4();
  std::vector<VertexId> act{0, 1};
  ReduceConfig tight;
  tight.c = {0.5, 0.5, 0.5, 0.5};
  EXPECT_THROW(reduce(QueryMode::Triconnected, g, act, tight), ReduceError);
  tight.check_size = false;
  EXPECT_NO_THROW(reduce(QueryMode::Triconnected, g, act, tight));
}

TEST(Reduce, InjectedFaultBreaksEquivalence) {
  auto g = path(4);
  std::vector<VertexId> act{0, 3};
  ReduceConfig faulty;
  faulty.inject_fault = true;
  auto h = reduce(QueryMode::TwoEdge, g, act, faulty);
  EXPECT_EQ(h.graph.edge_count(), 0u);
  EXPECT_FALSE(check_equivalence(g, h, act, QueryMode::TwoEdge).ok);
}

TEST(VertexMap, LookupAndErrors) {
  VertexMap f{{3, 30}, {1, 10}};
  EXPECT_EQ(f.at(1), 10u);
  EXPECT_EQ(f.at(3), 30u);
  EXPECT_FALSE(f.contains(2));
  EXPECT_THROW((void)f.at(2), std::out_of_range);
  EXPECT_EQ(f.size(), 2u);
}
