#pragma once

// Test-only helpers: random graph generators and brute-force answers that
// share no code with the library beyond MultiGraph itself.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "offcon/multigraph.hpp"

namespace support {

using offcon::MultiGraph;
using offcon::VertexId;

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

inline MultiGraph random_graph(Rng& rng, std::uint32_t n, double p) {
  MultiGraph g;
  for (VertexId v = 0; v < n; ++v) g.add_vertex(v);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      if (coin(rng) < p) g.add_edge(a, b);
    }
  }
  return g;
}

/// m random edges on n vertices; parallel copies allowed.
inline MultiGraph random_multigraph(Rng& rng, std::uint32_t n, std::uint32_t m) {
  MultiGraph g;
  for (VertexId v = 0; v < n; ++v) g.add_vertex(v);
  for (std::uint32_t i = 0; i < m && n >= 2; ++i) {
    VertexId a = below(rng, n), b = below(rng, n - 1);
    if (b >= a) ++b;
    g.add_edge(a, b);
  }
  return g;
}

/// Random spanning tree plus `extra` random edges (parallel allowed when
/// `multi`).
inline MultiGraph random_connected(Rng& rng, std::uint32_t n, std::uint32_t extra, bool multi = true) {
  MultiGraph g;
  g.add_vertex(0);
  for (VertexId v = 1; v < n; ++v) g.add_edge(below(rng, v), v);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (auto& e : g.edges()) seen.insert(std::minmax(e.u, e.v));
  for (std::uint32_t i = 0, tries = 0; i < extra && n >= 2 && tries < 50 * (extra + 1); ++tries) {
    VertexId a = below(rng, n), b = below(rng, n - 1);
    if (b >= a) ++b;
    if (!multi && !seen.insert(std::minmax(a, b)).second) continue;
    g.add_edge(a, b);
    ++i;
  }
  return g;
}

// Brute force on adjacency built here.

struct Adjacency {
  std::vector<VertexId> ids;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;  // (neighbour, edge)

  explicit Adjacency(const MultiGraph& g) : ids(g.vertices().begin(), g.vertices().end()), out(ids.size()) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto a = pos(g.edges()[e].u), b = pos(g.edges()[e].v);
      out[a].emplace_back(b, e);
      out[b].emplace_back(a, e);
    }
  }
  [[nodiscard]] std::size_t pos(VertexId v) const {
    return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), v) - ids.begin());
  }
  [[nodiscard]] std::size_t n() const { return ids.size(); }

  /// Component id per vertex (-1 for removed vertices) after removing the
  /// given edges and vertices.
  [[nodiscard]] std::vector<int> components(const std::set<std::size_t>& gone_edges,
                                            const std::set<std::size_t>& gone_vertices) const {
    std::vector<int> comp(n(), -1);
    int next = 0;
    for (std::size_t s = 0; s < n(); ++s) {
      if (comp[s] != -1 || gone_vertices.contains(s)) continue;
      std::vector<std::size_t> stack{s};
      comp[s] = next;
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto [y, e] : out[x]) {
          if (gone_edges.contains(e) || gone_vertices.contains(y) || comp[y] != -1) continue;
          comp[y] = next;
          stack.push_back(y);
        }
      }
      ++next;
    }
    return comp;
  }
};

inline std::set<std::size_t> brute_bridges(const MultiGraph& g) {
  Adjacency adj(g);
  std::set<std::size_t> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto c = adj.components({e}, {});
    if (c[adj.pos(g.edges()[e].u)] != c[adj.pos(g.edges()[e].v)]) out.insert(e);
  }
  return out;
}

inline std::set<VertexId> brute_articulation(const MultiGraph& g) {
  Adjacency adj(g);
  auto count = [](const std::vector<int>& c) { return *std::max_element(c.begin(), c.end()) + 1; };
  std::set<VertexId> out;
  if (adj.n() < 3) return out;
  int base = count(adj.components({}, {}));
  for (std::size_t x = 0; x < adj.n(); ++x) {
    if (count(adj.components({}, {x})) > base) out.insert(adj.ids[x]);
  }
  return out;
}

/// same[a][b] iff no edge set of size <= max_cut separates a and b.
inline std::vector<std::vector<bool>> brute_edge_classes(const MultiGraph& g, int max_cut) {
  Adjacency adj(g);
  const auto n = adj.n(), m = g.edge_count();
  std::vector<std::vector<bool>> same(n, std::vector<bool>(n, true));
  auto apply = [&](const std::set<std::size_t>& cut) {
    auto c = adj.components(cut, {});
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (c[a] != c[b]) same[a][b] = false;
      }
    }
  };
  apply({});
  for (std::size_t e = 0; e < m; ++e) {
    if (max_cut >= 1) apply({e});
    for (std::size_t f = e + 1; f < m && max_cut >= 2; ++f) apply({e, f});
  }
  return same;
}

/// Unordered pairs {a, b} whose removal leaves a disconnected graph.
inline std::vector<std::pair<VertexId, VertexId>> brute_separation_pairs(const MultiGraph& g) {
  Adjacency adj(g);
  std::vector<std::pair<VertexId, VertexId>> out;
  for (std::size_t a = 0; a < adj.n(); ++a) {
    for (std::size_t b = a + 1; b < adj.n(); ++b) {
      auto c = adj.components({}, {a, b});
      if (*std::max_element(c.begin(), c.end()) >= 1) out.push_back(std::minmax(adj.ids[a], adj.ids[b]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool brute_biconnected(const MultiGraph& g) {
  if (g.vertex_count() < 2) return false;
  Adjacency adj(g);
  auto comp = adj.components({}, {});
  if (*std::max_element(comp.begin(), comp.end()) != 0) return false;
  return brute_articulation(g).empty() && g.edge_count() >= 1;
}

/// Pair query straight from the cut definition, enumerating cut sets by
/// bitmask.
inline bool brute_pair(const MultiGraph& g, bool edge_cut, int level, VertexId u, VertexId v) {
  Adjacency adj(g);
  auto s = adj.pos(u), t = adj.pos(v);
  const std::size_t universe = edge_cut ? g.edge_count() : adj.n();
  std::vector<std::size_t> items(universe);
  for (std::size_t i = 0; i < universe; ++i) items[i] = i;
  std::vector<std::set<std::size_t>> cuts{{}};
  for (std::size_t i = 0; i < universe; ++i) {
    cuts.push_back({i});
    if (level == 3) {
      for (std::size_t j = i + 1; j < universe; ++j) cuts.push_back({i, j});
    }
  }
  for (const auto& cut : cuts) {
    if (!edge_cut && (cut.contains(s) || cut.contains(t))) continue;
    auto c = edge_cut ? adj.components(cut, {}) : adj.components({}, cut);
    if (c[s] != c[t]) return false;
  }
  return true;
}

/// Random biconnected simple graph on n vertices, by rejection.
inline MultiGraph random_biconnected(Rng& rng, std::uint32_t n) {
  while (true) {
    auto extra = static_cast<std::uint32_t>(n / 2 + below(rng, 2 * n));
    auto g = random_connected(rng, n, extra, false);
    if (g.edge_count() >= 3 && brute_biconnected(g)) return g;
  }
}

}  // namespace support
