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

bool brute(const MultiGraph& g, QueryMode m, VertexId u, VertexId v) {
  return support::brute_pair(g, flavor(m) == CutFlavor::Edge, level(m), u, v);
}

}  // namespace

TEST(PairQuery, SingleEdge) {
  auto g = from_edges({{1, 2}});
  EXPECT_FALSE(pair_query(g, {QueryMode::TwoEdge, 1, 2}));
  EXPECT_TRUE(pair_query(g, {QueryMode::Biconnected, 1, 2}));
  EXPECT_TRUE(pair_query(g, {QueryMode::Triconnected, 1, 2}));
  EXPECT_TRUE(is_connected_pair(g, 1, 2));
}

TEST(PairQuery, DisjointEdgesAreNotConnected) {
  auto g = from_edges({{1, 2}, {3, 4}});
  EXPECT_FALSE(is_connected_pair(g, 1, 3));
  for (auto m : kAllModes) EXPECT_FALSE(pair_query(g, {m, 1, 3}));
}

TEST(PairQuery, Triangle) {
  auto g = from_edges({{1, 2}, {2, 3}, {3, 1}});
  EXPECT_TRUE(pair_query(g, {QueryMode::TwoEdge, 1, 2}));
  EXPECT_FALSE(pair_query(g, {QueryMode::ThreeEdge, 1, 2}));
  EXPECT_TRUE(pair_query(g, {QueryMode::Biconnected, 1, 2}));
  EXPECT_TRUE(pair_query(g, {QueryMode::Triconnected, 1, 2}));
}

TEST(PairQuery, PathThroughMiddleVertex) {
  auto g = from_edges({{1, 2}, {2, 3}});
  EXPECT_FALSE(pair_query(g, {QueryMode::TwoEdge, 1, 3}));
  EXPECT_FALSE(pair_query(g, {QueryMode::Biconnected, 1, 3}));
}

TEST(PairQuery, FourCycleOppositeCorners) {
  auto g = from_edges({{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  EXPECT_TRUE(pair_query(g, {QueryMode::Biconnected, 1, 3}));
  EXPECT_FALSE(pair_query(g, {QueryMode::Triconnected, 1, 3}));
}

TEST(PairQuery, BadArguments) {
  auto g = from_edges({{1, 2}});
  EXPECT_THROW(pair_query(g, {QueryMode::TwoEdge, 1, 1}), std::invalid_argument);
  EXPECT_THROW(pair_query(g, {QueryMode::TwoEdge, 1, 9}), std::out_of_range);
}

TEST(PairQuery, RandomGraphsMatchCutEnumeration) {
  Rng rng(21);
  for (int it = 0; it < 300; ++it) {
    auto n = static_cast<std::uint32_t>(2 + support::below(rng, 7));
    auto g = support::random_multigraph(rng, n, static_cast<std::uint32_t>(support::below(rng, 2 * n + 3)));
    for (int q = 0; q < 4; ++q) {
      VertexId u = support::below(rng, n), v = support::below(rng, n - 1);
      if (v >= u) ++v;
      for (auto m : kAllModes) {
        bool want = brute(g, m, u, v);
        ASSERT_EQ(pair_query(g, {m, u, v}), want) << short_name(m) << " iteration " << it;
        ASSERT_EQ(pair_query_decomposed(g, {m, u, v}), want) << short_name(m) << " iteration " << it;
      }
    }
  }
}

TEST(PairQuery, LevelThreeImpliesLevelTwo) {
  Rng rng(22);
  for (int it = 0; it < 200; ++it) {
    auto g = support::random_graph(rng, 7, 0.5);
    VertexId u = support::below(rng, 7), v = (u + 1 + support::below(rng, 6)) % 7;
    if (pair_query(g, {QueryMode::ThreeEdge, u, v})) ASSERT_TRUE(pair_query(g, {QueryMode::TwoEdge, u, v}));
    if (pair_query(g, {QueryMode::Triconnected, u, v})) ASSERT_TRUE(pair_query(g, {QueryMode::Biconnected, u, v}));
  }
}

TEST(PairQuery, AdjacentVerticesAreTriconnected) {
  Rng rng(23);
  for (int it = 0; it < 200; ++it) {
    auto n = static_cast<std::uint32_t>(2 + support::below(rng, 10));
    auto g = support::random_connected(rng, n, static_cast<std::uint32_t>(support::below(rng, n)));
    for (const auto& e : g.edges()) {
      ASSERT_TRUE(pair_query(g, {QueryMode::Biconnected, e.u, e.v}));
      ASSERT_TRUE(pair_query(g, {QueryMode::Triconnected, e.u, e.v}));
      ASSERT_TRUE(pair_query_decomposed(g, {QueryMode::Triconnected, e.u, e.v}));
    }
  }
}
