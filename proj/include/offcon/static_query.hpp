#pragma once

// Pair-connectivity predicates on a static graph.
//
// Vertex cuts never contain the queried pair itself, so two adjacent vertices
// are always bi- and tri-connected. This differs from counting internally
// disjoint paths.

#include <stdexcept>
#include <vector>

#include "offcon/decompositions.hpp"
#include "offcon/multigraph.hpp"
#include "offcon/query_mode.hpp"

namespace offcon {

struct PairQuery {
  QueryMode mode;
  VertexId u;
  VertexId v;
};

namespace detail {

inline bool reaches(const Csr& c, std::uint32_t s, std::uint32_t t, const std::vector<char>* skip_edge,
                    const std::vector<char>* skip_vertex) {
  std::vector<char> seen(c.n(), 0);
  std::vector<std::uint32_t> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    if (x == t) return true;
    for (auto i = c.begin(x); i < c.end(x); ++i) {
      if (skip_edge && (*skip_edge)[c.edge[i]]) continue;
      auto y = c.target[i];
      if (seen[y] || (skip_vertex && (*skip_vertex)[y])) continue;
      seen[y] = 1;
      stack.push_back(y);
    }
  }
  return false;
}

inline void check_pair(const MultiGraph& g, VertexId u, VertexId v) {
  if (!g.has_vertex(u)) throw std::out_of_range("unknown vertex " + std::to_string(u));
  if (!g.has_vertex(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
  if (u == v) throw std::invalid_argument("pair query needs two distinct vertices");
}

/// True when some block of the graph described by `c` holds both s and t.
inline bool share_block(const Csr& c, std::uint32_t s, std::uint32_t t) {
  auto low = dfs_low(c);
  for (std::size_t b = 0; b < low.block_edges.size(); ++b) {
    auto block = low.block_edges[b];
    bool has_s = false, has_t = false;
    for (auto e : block) {
      auto [a, b] = c.ends[e];
      has_s = has_s || a == s || b == s;
      has_t = has_t || a == t || b == t;
    }
    if (has_s && has_t) return true;
  }
  return false;
}

}  // namespace detail

inline bool is_connected_pair(const MultiGraph& g, VertexId u, VertexId v) {
  if (!g.has_vertex(u)) throw std::out_of_range("unknown vertex " + std::to_string(u));
  if (!g.has_vertex(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
  auto csr = detail::Csr::of(g);
  return detail::reaches(csr, g.index_of(u), g.index_of(v), nullptr, nullptr);
}

/// Definition-level answer: removes every candidate cut set of size < level
/// and checks reachability. Meant for the constant-size graphs met at the
/// bottom of the recursion.
inline bool pair_query(const MultiGraph& g, const PairQuery& q) {
  detail::check_pair(g, q.u, q.v);
  auto csr = detail::Csr::of(g);
  const auto s = g.index_of(q.u), t = g.index_of(q.v);
  if (!detail::reaches(csr, s, t, nullptr, nullptr)) return false;
  const bool two = level(q.mode) == 3;
  if (flavor(q.mode) == CutFlavor::Edge) {
    std::vector<char> cut(csr.m(), 0);
    for (std::uint32_t e = 0; e < csr.m(); ++e) {
      cut[e] = 1;
      if (!detail::reaches(csr, s, t, &cut, nullptr)) return false;
      if (two) {
        for (auto f = e + 1; f < csr.m(); ++f) {
          cut[f] = 1;
          bool ok = detail::reaches(csr, s, t, &cut, nullptr);
          cut[f] = 0;
          if (!ok) return false;
        }
      }
      cut[e] = 0;
    }
    return true;
  }
  std::vector<char> cut(csr.n(), 0);
  for (std::uint32_t a = 0; a < csr.n(); ++a) {
    if (a == s || a == t) continue;
    cut[a] = 1;
    if (!detail::reaches(csr, s, t, nullptr, &cut)) return false;
    if (two) {
      for (auto b = a + 1; b < csr.n(); ++b) {
        if (b == s || b == t) continue;
        cut[b] = 1;
        bool ok = detail::reaches(csr, s, t, nullptr, &cut);
        cut[b] = 0;
        if (!ok) return false;
      }
    }
    cut[a] = 0;
  }
  return true;
}

namespace detail {

inline bool decomposed_query(const Csr& csr, QueryMode mode, std::uint32_t s, std::uint32_t t) {
  std::uint32_t count = 0;
  switch (mode) {
    case QueryMode::TwoEdge: {
      auto label = two_edge_labels(csr, count);
      return label[s] == label[t];
    }
    case QueryMode::ThreeEdge: {
      auto label = three_edge_labels(csr, count);
      return label[s] == label[t];
    }
    case QueryMode::Biconnected:
      return share_block(csr, s, t);
    case QueryMode::Triconnected: {
      if (!share_block(csr, s, t)) return false;
      for (std::uint32_t w = 0; w < csr.n(); ++w) {
        if (w == s || w == t) continue;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> rest;
        for (auto [a, b] : csr.ends) {
          if (a != w && b != w) rest.emplace_back(a, b);
        }
        if (!share_block(Csr::build(csr.n(), std::move(rest)), s, t)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Same predicate answered through the static decompositions; this is what
/// full-size replay uses.
inline bool pair_query_decomposed(const MultiGraph& g, const PairQuery& q) {
  detail::check_pair(g, q.u, q.v);
  return detail::decomposed_query(detail::Csr::of(g), q.mode, g.index_of(q.u), g.index_of(q.v));
}

}  // namespace offcon
