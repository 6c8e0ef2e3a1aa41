#include <gtest/gtest.h>

#include <map>
#include <set>

#include "offcon/offcon.hpp"
#include "spqr_checks.hpp"
#include "support.hpp"

using namespace offcon;
using support::Rng;

namespace {

MultiGraph from_edges(std::initializer_list<std::pair<VertexId, VertexId>> es) {
  MultiGraph g;
  for (auto [u, v] : es) g.add_edge(u, v);
  return g;
}

void check_tree(const MultiGraph& g, const SpqrTree& t) { ASSERT_EQ(spqr_checks::tree_problem(g, t), ""); }

}  // namespace

TEST(Spqr, CycleIsOneSNode) {
  auto g = from_edges({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
  auto t = spqr_tree(g);
  ASSERT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(t.nodes[0].type, SpqrNodeType::S);
  EXPECT_EQ(t.nodes[0].vertices.size(), 5u);
  EXPECT_EQ(t.nodes[0].edges.size(), 5u);
  check_tree(g, t);
}

TEST(Spqr, TripleEdgeIsOnePNode) {
  auto g = from_edges({{1, 2}, {1, 2}, {1, 2}});
  auto t = spqr_tree(g);
  ASSERT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(t.nodes[0].type, SpqrNodeType::P);
  check_tree(g, t);
}

TEST(Spqr, K4IsOneRNode) {
  auto g = from_edges({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  auto t = spqr_tree(g);
  ASSERT_EQ(t.nodes.size(), 1u);
  EXPECT_EQ(t.nodes[0].type, SpqrNodeType::R);
  EXPECT_TRUE(separation_pairs(t).empty());
}

TEST(Spqr, ThetaGraph) {
  // three paths of length two between 1 and 2
  auto g = from_edges({{1, 3}, {3, 2}, {1, 4}, {4, 2}, {1, 5}, {5, 2}});
  auto t = spqr_tree(g);
  std::map<SpqrNodeType, int> kinds;
  for (auto& n : t.nodes) ++kinds[n.type];
  EXPECT_EQ(kinds[SpqrNodeType::P], 1);
  EXPECT_EQ(kinds[SpqrNodeType::S], 3);
  check_tree(g, t);
  auto sp = separation_pairs(t);
  std::sort(sp.begin(), sp.end());
  sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
  EXPECT_EQ(sp, support::brute_separation_pairs(g));
}

TEST(Spqr, RejectsNonBiconnected) {
  EXPECT_THROW(spqr_tree(from_edges({{1, 2}, {2, 3}, {3, 1}, {3, 4}})), std::invalid_argument);
  EXPECT_THROW(spqr_tree(from_edges({{1, 2}, {2, 3}})), std::invalid_argument);
}

TEST(Spqr, QNodesWrapEveryRealEdge) {
  auto g = from_edges({{1, 2}, {2, 3}, {3, 1}, {1, 2}});
  auto q = with_q_nodes(spqr_tree(g));
  std::size_t qs = 0;
  for (auto& n : q.nodes) {
    if (n.type == SpqrNodeType::Q) ++qs;
    else for (auto& e : n.edges) EXPECT_FALSE(e.real);
  }
  EXPECT_EQ(qs, g.edge_count());
  EXPECT_EQ(spqr_checks::keyed(merge_skeletons(q)), spqr_checks::keyed(g));
}

TEST(Spqr, RandomBiconnectedGraphsMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    auto n = static_cast<std::uint32_t>(3 + support::below(rng, 7));
    auto g = support::random_biconnected(rng, n);
    auto t = spqr_tree(g);
    check_tree(g, t);
    auto sp = separation_pairs(t);
    std::sort(sp.begin(), sp.end());
    sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
    ASSERT_EQ(sp, support::brute_separation_pairs(g)) << "seed " << seed;
  }
}

TEST(Spqr, SubdividedMultigraphsMatchBruteForce) {
  // long degree-2 paths and parallel copies exercise the path-peeling step
  Rng rng(5);
  for (int it = 0; it < 150; ++it) {
    auto h = support::random_biconnected(rng, static_cast<std::uint32_t>(3 + support::below(rng, 5)));
    MultiGraph g;
    VertexId next = 100;
    for (const auto& e : h.edges()) {
      VertexId prev = e.u;
      for (auto k = support::below(rng, 3); k > 0; --k) {
        g.add_edge(prev, next);
        prev = next++;
      }
      g.add_edge(prev, e.v);
      if (support::below(rng, 4) == 0) g.add_edge(e.u, e.v);
    }
    if (g.vertex_count() > 14) continue;
    auto t = spqr_tree(g);
    check_tree(g, t);
    auto sp = separation_pairs(t);
    std::sort(sp.begin(), sp.end());
    sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
    ASSERT_EQ(sp, support::brute_separation_pairs(g)) << "iteration " << it;
  }
}
