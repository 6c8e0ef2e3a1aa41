#pragma once

// Static connectivity decompositions: bridges and 2-edge-connected
// components, blocks and cut vertices, 3-edge-connected components, and the
// cactus left behind once those are contracted. All routines are
// multigraph-correct: a parallel pair is never a bridge and a block may
// consist of parallel edges only.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "offcon/multigraph.hpp"

namespace offcon {

namespace detail {

struct DfsLow {
  std::vector<char> is_bridge;                          // per edge
  FlatLists block_edges;  // edge indices per biconnected block
};

/// One iterative DFS computing bridges and edge-blocks (Hopcroft-Tarjan).
/// The tree edge into a vertex is skipped by edge index, not by neighbour, so
/// a parallel copy of it is a back edge. `skip_edge` removes one edge.
inline DfsLow dfs_low(const Csr& c, std::uint32_t skip_edge = kNone, bool want_blocks = true) {
  const auto n = c.n();
  DfsLow out;
  out.is_bridge.assign(c.m(), 0);
  std::vector<std::uint32_t> disc(n, kNone), low(n, 0);
  struct Frame {
    std::uint32_t v, parent_edge, it;
  };
  std::vector<Frame> stack;
  std::vector<std::uint32_t> edge_stack;
  stack.reserve(n);
  if (want_blocks) {
    edge_stack.reserve(c.m());
    out.block_edges.items.reserve(c.m());
  }
  std::uint32_t clock = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (disc[s] != kNone) continue;
    disc[s] = low[s] = clock++;
    stack.push_back({s, kNone, c.begin(s)});
    while (!stack.empty()) {
      auto& f = stack.back();
      const auto v = f.v;
      if (f.it < c.end(v)) {
        const auto i = f.it++;
        const auto e = c.edge[i];
        if (e == f.parent_edge || e == skip_edge) continue;
        const auto w = c.target[i];
        if (disc[w] == kNone) {
          if (want_blocks) edge_stack.push_back(e);
          disc[w] = low[w] = clock++;
          stack.push_back({w, e, c.begin(w)});
        } else if (disc[w] < disc[v]) {
          if (want_blocks) edge_stack.push_back(e);
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      const auto pe = f.parent_edge;
      stack.pop_back();
      if (stack.empty()) break;
      const auto p = stack.back().v;
      low[p] = std::min(low[p], low[v]);
      if (low[v] > disc[p]) out.is_bridge[pe] = 1;
      if (want_blocks && low[v] >= disc[p]) {
        auto& items = out.block_edges.items;
        const auto start = items.size();
        while (true) {
          auto e = edge_stack.back();
          edge_stack.pop_back();
          items.push_back(e);
          if (e == pe) break;
        }
        std::reverse(items.begin() + static_cast<std::ptrdiff_t>(start), items.end());
        out.block_edges.close();
      }
    }
  }
  return out;
}

inline std::vector<std::uint32_t> two_edge_labels(const Csr& c, std::uint32_t& count,
                                                  std::vector<char>* bridges_out = nullptr) {
  auto low = dfs_low(c, kNone, false);
  auto label = component_labels(c, count, &low.is_bridge);
  if (bridges_out) *bridges_out = std::move(low.is_bridge);
  return label;
}

/// Labels of 3-edge-connected classes. Starts from the 2-edge-connected
/// classes and refines them by the 2-edge-connected classes of G - e for each
/// spanning-forest edge e: any 2-edge cut contains a forest edge.
/// O(n (n + m)) rather than linear.
inline std::vector<std::uint32_t> three_edge_labels(const Csr& c, std::uint32_t& count) {
  std::vector<char> bridge;
  auto label = two_edge_labels(c, count, &bridge);

  std::vector<std::uint32_t> forest;
  {
    std::vector<char> seen(c.n(), 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < c.n(); ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      stack.push_back(s);
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto i = c.begin(x); i < c.end(x); ++i) {
          auto y = c.target[i];
          if (seen[y]) continue;
          seen[y] = 1;
          forest.push_back(c.edge[i]);
          stack.push_back(y);
        }
      }
    }
  }

  std::unordered_map<std::uint64_t, std::uint32_t> remap;
  for (auto e : forest) {
    if (bridge[e]) continue;
    auto low = dfs_low(c, e, false);
    low.is_bridge[e] = 1;
    std::uint32_t sub_count = 0;
    auto sub = component_labels(c, sub_count, &low.is_bridge);
    remap.clear();
    std::uint32_t next = 0;
    for (std::uint32_t v = 0; v < c.n(); ++v) {
      auto key = (static_cast<std::uint64_t>(label[v]) << 32) | sub[v];
      auto [it, inserted] = remap.try_emplace(key, next);
      if (inserted) ++next;
      label[v] = it->second;
    }
    count = next;
  }
  return label;
}

}  // namespace detail

struct TwoEdgeComponents {
  std::vector<EdgeKey> bridges;
  VertexPartition partition;
};

inline TwoEdgeComponents two_edge_components(const MultiGraph& g) {
  auto csr = detail::Csr::of(g);
  std::vector<char> bridge;
  std::uint32_t count = 0;
  auto label = detail::two_edge_labels(csr, count, &bridge);
  TwoEdgeComponents out;
  for (std::uint32_t e = 0; e < csr.m(); ++e) {
    if (bridge[e]) out.bridges.push_back(g.edges()[e].key);
  }
  out.partition = detail::to_partition(g, label, count);
  return out;
}

/// Blocks (biconnected components) of a connected graph and their incidence
/// with cut vertices. `block_cuts[b]` indexes into `cut_vertices`.
struct BlockTree {
  std::vector<std::vector<VertexId>> blocks;
  std::vector<std::vector<EdgeKey>> block_edges;
  std::vector<VertexId> cut_vertices;
  std::vector<std::vector<std::size_t>> block_cuts;

  [[nodiscard]] bool is_cut_vertex(VertexId v) const {
    return std::find(cut_vertices.begin(), cut_vertices.end(), v) != cut_vertices.end();
  }
};

inline BlockTree block_tree(const MultiGraph& g) {
  auto csr = detail::Csr::of(g);
  std::uint32_t comps = 0;
  detail::component_labels(csr, comps);
  if (comps > 1) throw std::invalid_argument("block_tree: graph is disconnected");

  BlockTree out;
  if (g.vertex_count() == 1) {
    out.blocks.push_back({g.vertices()[0]});
    out.block_edges.emplace_back();
    out.block_cuts.emplace_back();
    return out;
  }
  auto low = detail::dfs_low(csr);
  std::vector<std::uint32_t> membership(csr.n(), 0), stamp(csr.n(), detail::kNone);
  std::vector<std::vector<std::uint32_t>> block_vertices;
  for (std::uint32_t b = 0; b < low.block_edges.size(); ++b) {
    auto& vs = block_vertices.emplace_back();
    auto& keys = out.block_edges.emplace_back();
    for (auto e : low.block_edges[b]) {
      keys.push_back(g.edges()[e].key);
      for (auto x : {csr.ends[e].first, csr.ends[e].second}) {
        if (stamp[x] == b) continue;
        stamp[x] = b;
        vs.push_back(x);
        ++membership[x];
      }
    }
  }
  std::vector<std::size_t> cut_index(csr.n(), 0);
  for (std::uint32_t v = 0; v < csr.n(); ++v) {
    if (membership[v] >= 2) {
      cut_index[v] = out.cut_vertices.size();
      out.cut_vertices.push_back(g.vertices()[v]);
    }
  }
  for (auto& vs : block_vertices) {
    auto& ids = out.blocks.emplace_back();
    auto& cuts = out.block_cuts.emplace_back();
    for (auto x : vs) {
      ids.push_back(g.vertices()[x]);
      if (membership[x] >= 2) cuts.push_back(cut_index[x]);
    }
  }
  return out;
}

inline VertexPartition three_edge_components(const MultiGraph& g) {
  auto csr = detail::Csr::of(g);
  std::uint32_t count = 0;
  auto label = detail::three_edge_labels(csr, count);
  return detail::to_partition(g, label, count);
}

/// A connected graph whose edges split into edge-disjoint cycles and tree
/// edges. Cycles of length two are parallel pairs.
struct Cactus {
  MultiGraph graph;
  std::vector<std::vector<EdgeKey>> cycles;
  std::vector<EdgeKey> tree_edges;
};

namespace detail {

/// Splits the edges of a cactus into cycles and tree edges. Returns false if
/// some block is neither a single edge nor a simple cycle.
inline bool split_cactus(const MultiGraph& g, Cactus& out) {
  auto csr = Csr::of(g);
  auto low = dfs_low(csr);
  std::vector<std::uint32_t> deg(csr.n(), 0);
  for (std::size_t b = 0; b < low.block_edges.size(); ++b) {
    auto block = low.block_edges[b];
    if (block.size() == 1) {
      out.tree_edges.push_back(g.edges()[block[0]].key);
      continue;
    }
    std::vector<std::uint32_t> touched;
    for (auto e : block) {
      for (auto x : {csr.ends[e].first, csr.ends[e].second}) {
        if (deg[x]++ == 0) touched.push_back(x);
      }
    }
    bool cycle = touched.size() == block.size();
    for (auto x : touched) {
      cycle = cycle && deg[x] == 2;
      deg[x] = 0;
    }
    if (!cycle) return false;
    auto& keys = out.cycles.emplace_back();
    for (auto e : block) keys.push_back(g.edges()[e].key);
  }
  return true;
}

}  // namespace detail

/// Cactus view of a connected graph with no nontrivial 3-edge-connected
/// component (contract them first). Rejects inputs that break this.
inline Cactus cactus_of(const MultiGraph& g) {
  if (connected_components(g).count > 1) {
    throw std::invalid_argument("cactus_of: graph is disconnected");
  }
  if (three_edge_components(g).count != g.vertex_count()) {
    throw std::invalid_argument("cactus_of: graph has a nontrivial 3-edge-connected component");
  }
  Cactus out;
  out.graph = g;
  if (!detail::split_cactus(g, out)) {
    throw std::logic_error("cactus_of: block is not a cycle");
  }
  return out;
}

}  // namespace offcon
