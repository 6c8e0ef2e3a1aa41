#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace offcon {

using VertexId = std::uint64_t;
using EdgeKey = std::uint64_t;

struct Edge {
  EdgeKey key;
  VertexId u;
  VertexId v;

  [[nodiscard]] VertexId other(VertexId x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph. Parallel edges are allowed and told apart by their
/// key; self-loops are rejected. Vertices keep insertion order, which every
/// algorithm in this library relies on for deterministic output.
class MultiGraph {
 public:
  MultiGraph() = default;

  bool add_vertex(VertexId v) {
    if (dense_) {
      if (v < vertices_.size()) return false;
      if (v == vertices_.size()) {
        vertices_.push_back(v);
        return true;
      }
      leave_dense();
    }
    auto [it, inserted] = index_.try_emplace(v, vertices_.size());
    if (inserted) vertices_.push_back(v);
    return inserted;
  }

  EdgeKey add_edge(VertexId u, VertexId v) { return add_edge(next_key_, u, v); }

  EdgeKey add_edge(EdgeKey key, VertexId u, VertexId v) {
    if (u == v) {
      throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    }
    add_vertex(u);
    add_vertex(v);
    edges_.push_back({key, u, v});
    next_key_ = std::max(next_key_, key + 1);
    return key;
  }

  [[nodiscard]] bool has_vertex(VertexId v) const { return dense_ ? v < vertices_.size() : index_.contains(v); }

  /// Dense position of `v` in vertices(). Throws if absent.
  [[nodiscard]] std::uint32_t index_of(VertexId v) const {
    if (dense_) {
      if (v >= vertices_.size()) throw std::out_of_range("unknown vertex " + std::to_string(v));
      return static_cast<std::uint32_t>(v);
    }
    auto it = index_.find(v);
    if (it == index_.end()) {
      throw std::out_of_range("unknown vertex " + std::to_string(v));
    }
    return static_cast<std::uint32_t>(it->second);
  }

  [[nodiscard]] std::span<const VertexId> vertices() const { return vertices_; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::size_t size() const { return vertices_.size() + edges_.size(); }

  /// Every edge incident to `v`, parallel copies included.
  [[nodiscard]] std::vector<Edge> incident(VertexId v) const {
    std::vector<Edge> out;
    for (const auto& e : edges_) {
      if (e.u == v || e.v == v) out.push_back(e);
    }
    return out;
  }

  void reserve(std::size_t n, std::size_t m) {
    vertices_.reserve(n);
    if (!dense_) index_.reserve(n);
    edges_.reserve(m);
  }

 private:
  // While vertex i is named i for every i, lookups skip the hash map.
  void leave_dense() {
    dense_ = false;
    index_.reserve(vertices_.size() + 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
  }

  std::vector<VertexId> vertices_;
  bool dense_ = true;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<Edge> edges_;
  EdgeKey next_key_ = 0;
};

/// Component labels over the vertices of one graph, labels dense in [0, count).
struct VertexPartition {
  std::unordered_map<VertexId, std::uint32_t> label;
  std::uint32_t count = 0;

  [[nodiscard]] std::uint32_t of(VertexId v) const { return label.at(v); }
  [[nodiscard]] bool same(VertexId a, VertexId b) const { return of(a) == of(b); }
};

namespace detail {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Compressed adjacency over dense vertex indices. Each undirected edge shows
/// up twice, once from each endpoint, carrying its index into edges().
struct Csr {
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> target;
  std::vector<std::uint32_t> edge;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;

  [[nodiscard]] std::uint32_t n() const { return static_cast<std::uint32_t>(offset.size() - 1); }
  [[nodiscard]] std::uint32_t m() const { return static_cast<std::uint32_t>(ends.size()); }
  [[nodiscard]] std::uint32_t begin(std::uint32_t v) const { return offset[v]; }
  [[nodiscard]] std::uint32_t end(std::uint32_t v) const { return offset[v + 1]; }
  [[nodiscard]] std::uint32_t degree(std::uint32_t v) const { return offset[v + 1] - offset[v]; }

  static Csr build(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> ends) {
    Csr c;
    c.ends = std::move(ends);
    c.offset.assign(n + 1, 0);
    for (auto [a, b] : c.ends) {
      ++c.offset[a + 1];
      ++c.offset[b + 1];
    }
    for (std::uint32_t i = 0; i < n; ++i) c.offset[i + 1] += c.offset[i];
    c.target.resize(c.offset[n]);
    c.edge.resize(c.offset[n]);
    std::vector<std::uint32_t> pos(c.offset.begin(), c.offset.end() - 1);
    for (std::uint32_t i = 0; i < c.ends.size(); ++i) {
      auto [a, b] = c.ends[i];
      c.target[pos[a]] = b;
      c.edge[pos[a]++] = i;
      c.target[pos[b]] = a;
      c.edge[pos[b]++] = i;
    }
    return c;
  }

  static Csr of(const MultiGraph& g) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
    ends.reserve(g.edge_count());
    for (const auto& e : g.edges()) ends.emplace_back(g.index_of(e.u), g.index_of(e.v));
    return build(static_cast<std::uint32_t>(g.vertex_count()), std::move(ends));
  }
};

/// Labels of connected components, numbered in order of smallest vertex index.
/// Edges with `skip[e]` set are ignored.
inline std::vector<std::uint32_t> component_labels(const Csr& c, std::uint32_t& count,
                                                   const std::vector<char>* skip_edge = nullptr,
                                                   const std::vector<char>* skip_vertex = nullptr) {
  std::vector<std::uint32_t> label(c.n(), kNone);
  std::vector<std::uint32_t> stack;
  count = 0;
  for (std::uint32_t s = 0; s < c.n(); ++s) {
    if (label[s] != kNone || (skip_vertex && (*skip_vertex)[s])) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto i = c.begin(x); i < c.end(x); ++i) {
        if (skip_edge && (*skip_edge)[c.edge[i]]) continue;
        auto y = c.target[i];
        if (label[y] != kNone || (skip_vertex && (*skip_vertex)[y])) continue;
        label[y] = count;
        stack.push_back(y);
      }
    }
    ++count;
  }
  return label;
}

inline VertexPartition to_partition(const MultiGraph& g, const std::vector<std::uint32_t>& label,
                                    std::uint32_t count) {
  VertexPartition p;
  p.count = count;
  p.label.reserve(label.size());
  auto vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) p.label.emplace(vs[i], label[i]);
  return p;
}

/// Many short lists in one buffer: list i is items[offset[i], offset[i + 1]).
struct FlatLists {
  std::vector<std::uint32_t> items;
  std::vector<std::uint32_t> offset{0};

  [[nodiscard]] std::size_t size() const { return offset.size() - 1; }
  [[nodiscard]] std::span<const std::uint32_t> operator[](std::size_t i) const {
    return {items.data() + offset[i], items.data() + offset[i + 1]};
  }
  void close() { offset.push_back(static_cast<std::uint32_t>(items.size())); }
};

/// Minimal union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

inline VertexPartition connected_components(const MultiGraph& g) {
  auto csr = detail::Csr::of(g);
  std::uint32_t count = 0;
  auto label = detail::component_labels(csr, count);
  return detail::to_partition(g, label, count);
}

struct Contraction {
  MultiGraph graph;
  std::unordered_map<VertexId, VertexId> map;
};

/// Quotient of `g` by `p`. Quotient vertex ids are the partition labels,
/// created in order of first appearance. Edges inside a class are dropped;
/// cross-class edges keep their key, so parallel copies survive.
inline Contraction contract(const MultiGraph& g, const VertexPartition& p) {
  Contraction out;
  out.graph.reserve(p.count, g.edge_count());
  out.map.reserve(g.vertex_count());
  for (auto v : g.vertices()) {
    VertexId q = p.of(v);
    out.graph.add_vertex(q);
    out.map.emplace(v, q);
  }
  for (const auto& e : g.edges()) {
    auto a = out.map.at(e.u);
    auto b = out.map.at(e.v);
    if (a != b) out.graph.add_edge(e.key, a, b);
  }
  return out;
}

}  // namespace offcon
