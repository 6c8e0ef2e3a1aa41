#pragma once

// Reducers: given a graph and a set of active vertices, build a small graph
// that keeps every separating cut of the active set below the mode's
// connectivity level. Output vertex ids are fresh (0..n-1); `f` maps each
// active vertex of the input to its image.
//
// Components without active vertices are dropped. Actives absent from the
// input graph are treated as isolated vertices.

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "offcon/decompositions.hpp"
#include "offcon/multigraph.hpp"
#include "offcon/query_mode.hpp"
#include "offcon/spqr_tree.hpp"

namespace offcon {

/// Vertex map sorted by source, filled once and then only read.
class VertexMap {
 public:
  using Entry = std::pair<VertexId, VertexId>;
  using const_iterator = std::vector<Entry>::const_iterator;

  VertexMap() = default;
  VertexMap(std::initializer_list<Entry> entries) : entries_(entries) { seal(); }

  void reserve(std::size_t n) { entries_.reserve(n); }
  /// Sources must be distinct; call seal() after the last insert.
  void insert(VertexId from, VertexId to) { entries_.emplace_back(from, to); }
  void seal() {
    if (!std::is_sorted(entries_.begin(), entries_.end())) std::sort(entries_.begin(), entries_.end());
  }

  [[nodiscard]] const_iterator find(VertexId v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const Entry& e, VertexId x) { return e.first < x; });
    return it != entries_.end() && it->first == v ? it : entries_.end();
  }
  [[nodiscard]] VertexId at(VertexId v) const {
    auto it = find(v);
    if (it == end()) throw std::out_of_range("vertex " + std::to_string(v) + " is not mapped");
    return it->second;
  }
  [[nodiscard]] bool contains(VertexId v) const { return find(v) != end(); }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] const_iterator begin() const { return entries_.begin(); }
  [[nodiscard]] const_iterator end() const { return entries_.end(); }

 private:
  std::vector<Entry> entries_;
};

struct ReducedGraph {
  MultiGraph graph;
  VertexMap f;  // active vertex -> vertex of graph
  std::size_t vertices = 0;
  std::size_t edges = 0;

  [[nodiscard]] std::size_t size() const { return vertices + edges; }
};

/// Per-mode ceilings on output size, as multiples of max(1, |active|), in
/// kAllModes order. About twice the worst ratio measured on random graphs and
/// inside random timelines (2.75, 5.3, 6 and 14.25); see README.
struct ReduceConfig {
  std::array<double, 4> c{6.0, 12.0, 12.0, 32.0};
  std::size_t k0 = 1;
  bool check_size = true;
  bool inject_fault = false;  // negative control: drops one output edge

  [[nodiscard]] double bound(QueryMode m) const { return c[static_cast<std::size_t>(m)]; }
};

class ReduceError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail::reduce {

using Pair = std::pair<std::uint32_t, std::uint32_t>;

/// Input graph over dense indices, with active flags.
struct Dense {
  std::vector<VertexId> id;
  std::vector<char> active;
  std::vector<std::uint32_t> actives;  // distinct, in input order
  std::vector<Pair> edges;

  [[nodiscard]] std::uint32_t n() const { return static_cast<std::uint32_t>(id.size()); }
};

inline Dense densify(const MultiGraph& g, std::span<const VertexId> active, bool simple) {
  Dense d;
  d.id.assign(g.vertices().begin(), g.vertices().end());
  d.active.assign(d.id.size(), 0);
  std::unordered_map<VertexId, std::uint32_t> extra;
  d.actives.reserve(active.size());
  for (auto a : active) {
    std::uint32_t i = 0;
    if (g.has_vertex(a)) {
      i = g.index_of(a);
    } else {
      auto [it, inserted] = extra.try_emplace(a, d.n());
      if (inserted) {
        d.id.push_back(a);
        d.active.push_back(0);
      }
      i = it->second;
    }
    if (!d.active[i]) {
      d.active[i] = 1;
      d.actives.push_back(i);
    }
  }
  d.edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    auto a = g.index_of(e.u), b = g.index_of(e.v);
    d.edges.push_back(simple ? Pair{std::min(a, b), std::max(a, b)} : Pair{a, b});
  }
  if (simple) {
    std::sort(d.edges.begin(), d.edges.end());
    d.edges.erase(std::unique(d.edges.begin(), d.edges.end()), d.edges.end());
  }
  return d;
}

/// Builds the output graph. Work vertices with `keep` set get fresh ids in
/// increasing index order; `rep[i]` is the work vertex of `d.actives[i]`.
inline ReducedGraph emit(const Dense& d, const std::vector<char>& keep, const std::vector<Pair>& edges,
                         const std::vector<std::uint32_t>& rep) {
  ReducedGraph out;
  out.graph.reserve(keep.size(), edges.size());
  out.f.reserve(d.actives.size());
  std::vector<std::uint32_t> fresh(keep.size(), kNone);
  VertexId next = 0;
  for (std::uint32_t x = 0; x < keep.size(); ++x) {
    if (!keep[x]) continue;
    fresh[x] = static_cast<std::uint32_t>(next);
    out.graph.add_vertex(next++);
  }
  for (auto [a, b] : edges) out.graph.add_edge(fresh.at(a), fresh.at(b));
  for (std::size_t i = 0; i < d.actives.size(); ++i) {
    auto w = fresh.at(rep[i]);
    if (w == kNone) throw std::logic_error("reducer dropped an active vertex");
    out.f.insert(d.id[d.actives[i]], w);
  }
  out.f.seal();
  out.vertices = out.graph.vertex_count();
  out.edges = out.graph.edge_count();
  return out;
}

/// Worklist pruning for edge cuts: removes inactive vertices of degree 0 or
/// 1 and splices inactive vertices of degree 2. A degree-2 vertex whose two
/// edges go to the same neighbour is removed with both edges.
class EdgePruner {
 public:
  EdgePruner(std::uint32_t n, const std::vector<Pair>& edges, std::vector<char> active)
      : adj_(n), deg_(n, 0), alive_(n, 1), active_(std::move(active)) {
    for (auto [a, b] : edges) add_edge(a, b);
  }

  void run() {
    std::vector<std::uint32_t> work;
    for (std::uint32_t x = 0; x < alive_.size(); ++x) {
      if (alive_[x] && !active_[x] && deg_[x] <= 2) work.push_back(x);
    }
    std::uint32_t inc[2];
    while (!work.empty()) {
      auto x = work.back();
      work.pop_back();
      if (!alive_[x] || active_[x] || deg_[x] > 2) continue;
      std::uint32_t found = 0;
      auto& list = adj_[x];
      std::size_t w = 0;
      for (auto e : list) {
        if (!edge_alive_[e]) continue;
        list[w++] = e;
        if (found < 2) inc[found++] = e;
      }
      list.resize(w);
      alive_[x] = 0;
      if (found == 1) {
        auto y = other(inc[0], x);
        kill(inc[0]);
        work.push_back(y);
      } else if (found == 2) {
        auto a = other(inc[0], x), b = other(inc[1], x);
        kill(inc[0]);
        kill(inc[1]);
        if (a != b) {
          add_edge(a, b);
        } else {
          work.push_back(a);
        }
      }
    }
  }

  [[nodiscard]] const std::vector<char>& alive() const { return alive_; }

  [[nodiscard]] std::vector<Pair> edges() const {
    std::vector<Pair> out;
    for (std::size_t e = 0; e < ends_.size(); ++e) {
      if (edge_alive_[e]) out.push_back(ends_[e]);
    }
    return out;
  }

 private:
  void add_edge(std::uint32_t a, std::uint32_t b) {
    auto id = static_cast<std::uint32_t>(ends_.size());
    ends_.emplace_back(a, b);
    edge_alive_.push_back(1);
    adj_[a].push_back(id);
    adj_[b].push_back(id);
    ++deg_[a];
    ++deg_[b];
  }
  void kill(std::uint32_t e) {
    edge_alive_[e] = 0;
    --deg_[ends_[e].first];
    --deg_[ends_[e].second];
  }
  [[nodiscard]] std::uint32_t other(std::uint32_t e, std::uint32_t x) const {
    return ends_[e].first == x ? ends_[e].second : ends_[e].first;
  }

  std::vector<Pair> ends_;
  std::vector<char> edge_alive_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> deg_;
  std::vector<char> alive_;
  std::vector<char> active_;
};

/// Quotient of the dense graph by `label`; cross-label edges keep their
/// multiplicity.
inline std::vector<Pair> quotient_edges(const std::vector<Pair>& edges, const std::vector<std::uint32_t>& label) {
  std::vector<Pair> out;
  for (auto [a, b] : edges) {
    if (label[a] != label[b]) out.emplace_back(label[a], label[b]);
  }
  return out;
}

inline ReducedGraph two_edge(const Dense& d) {
  auto csr = Csr::build(d.n(), d.edges);
  std::uint32_t count = 0;
  auto label = two_edge_labels(csr, count);
  std::vector<char> active(count, 0);
  for (auto a : d.actives) active[label[a]] = 1;
  EdgePruner pruner(count, quotient_edges(d.edges, label), active);
  pruner.run();
  std::vector<std::uint32_t> rep;
  for (auto a : d.actives) rep.push_back(label[a]);
  return emit(d, pruner.alive(), pruner.edges(), rep);
}

/// Finds vertex-disjoint cycles with no active vertex and at most two
/// attachment vertices, each attachment lying in exactly one other block,
/// and contracts each to one vertex. Returns false when none exists.
inline bool contract_quiet_cycles(std::vector<char>& alive, std::vector<Pair>& edges, const std::vector<char>& active,
                                  DisjointSets& merged) {
  const auto n = static_cast<std::uint32_t>(alive.size());
  auto csr = Csr::build(n, edges);
  auto low = dfs_low(csr);
  std::vector<std::uint32_t> membership(n, 0), stamp(n, kNone);
  std::vector<std::vector<std::uint32_t>> verts(low.block_edges.size());
  for (std::uint32_t b = 0; b < low.block_edges.size(); ++b) {
    for (auto e : low.block_edges[b]) {
      for (auto x : {csr.ends[e].first, csr.ends[e].second}) {
        if (stamp[x] == b) continue;
        stamp[x] = b;
        verts[b].push_back(x);
        ++membership[x];
      }
    }
  }
  std::vector<char> used(n, 0);
  bool any = false;
  for (std::uint32_t b = 0; b < low.block_edges.size(); ++b) {
    if (low.block_edges[b].size() < 2) continue;
    std::uint32_t attachments = 0;
    bool ok = true;
    for (auto x : verts[b]) {
      if (active[x] || used[x] || membership[x] > 2) ok = false;
      if (membership[x] == 2) ++attachments;
    }
    if (!ok || attachments > 2) continue;
    for (auto x : verts[b]) {
      used[x] = 1;
      merged.unite(verts[b][0], x);
    }
    any = true;
  }
  if (!any) return false;
  std::vector<Pair> next;
  for (auto [a, b] : edges) {
    auto ra = merged.find(a), rb = merged.find(b);
    if (ra != rb) next.emplace_back(ra, rb);
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    if (merged.find(x) != x) alive[x] = 0;
  }
  edges = std::move(next);
  return true;
}

inline ReducedGraph three_edge(const Dense& d) {
  auto csr = Csr::build(d.n(), d.edges);
  std::uint32_t count = 0;
  auto label = three_edge_labels(csr, count);
  std::vector<char> active(count, 0);
  for (auto a : d.actives) active[label[a]] = 1;
  std::vector<char> alive(count, 1);
  std::vector<Pair> edges = quotient_edges(d.edges, label);
  DisjointSets merged(count);
  while (true) {
    EdgePruner pruner(count, edges, active);
    pruner.run();
    for (std::uint32_t x = 0; x < count; ++x) alive[x] = alive[x] && pruner.alive()[x];
    edges = pruner.edges();
    if (!contract_quiet_cycles(alive, edges, active, merged)) break;
  }
  std::vector<std::uint32_t> rep;
  for (auto a : d.actives) rep.push_back(merged.find(label[a]));
  return emit(d, alive, edges, rep);
}

/// Block tree with leaf-block removal and chain shortening, shared by the
/// two vertex-cut modes.
class BlockPruner {
 public:
  struct Block {
    std::uint32_t vbegin, vend;  // into the vertex buffer
    std::uint32_t ebegin, eend;  // into the edge buffer
    std::uint32_t cuts = 0;
    std::uint32_t actives = 0;
    bool alive = true;
  };

  BlockPruner(const Dense& d) : active_(d.active), alive_(d.n(), 1), nb_(d.n(), 0) {
    auto csr = Csr::build(d.n(), d.edges);
    auto low = dfs_low(csr);
    std::vector<std::uint32_t> stamp(d.n(), kNone);
    const auto nblocks = static_cast<std::uint32_t>(low.block_edges.size());
    blocks_.reserve(nblocks + d.n());
    verts_.reserve(csr.m() + nblocks);
    edges_.reserve(csr.m());
    for (std::uint32_t b = 0; b < nblocks; ++b) {
      Block block{static_cast<std::uint32_t>(verts_.size()), 0, static_cast<std::uint32_t>(edges_.size()), 0};
      for (auto e : low.block_edges[b]) {
        edges_.push_back(csr.ends[e]);
        for (auto x : {csr.ends[e].first, csr.ends[e].second}) {
          if (stamp[x] == b) continue;
          stamp[x] = b;
          verts_.push_back(x);
          ++nb_[x];
        }
      }
      block.vend = static_cast<std::uint32_t>(verts_.size());
      block.eend = static_cast<std::uint32_t>(edges_.size());
      blocks_.push_back(block);
    }
    // memberships never grow: a chain replaces one block per endpoint
    member_.offset.assign(d.n() + 1, 0);
    for (std::uint32_t x = 0; x < d.n(); ++x) member_.offset[x + 1] = member_.offset[x] + nb_[x];
    member_.items.resize(member_.offset[d.n()]);
    std::vector<std::uint32_t> fill(member_.offset.begin(), member_.offset.end() - 1);
    for (std::uint32_t b = 0; b < nblocks; ++b) {
      auto& block = blocks_[b];
      for (auto x : verts(b)) {
        member_.items[fill[x]++] = b;
        block.cuts += nb_[x] >= 2;
        block.actives += active_[x];
      }
    }
    for (std::uint32_t x = 0; x < d.n(); ++x) {
      if (nb_[x] == 0 && !active_[x]) alive_[x] = 0;
    }
  }

  void run() {
    work_.reserve(2 * (blocks_.size() + nb_.size()));
    for (std::uint32_t b = 0; b < blocks_.size(); ++b) work_.push_back({false, b});
    for (std::uint32_t x = 0; x < nb_.size(); ++x) {
      if (nb_[x] == 2) work_.push_back({true, x});
    }
    while (!work_.empty()) {
      auto [vertex, id] = work_.back();
      work_.pop_back();
      if (vertex) {
        chain(id);
      } else {
        leaf(id);
      }
    }
  }

  [[nodiscard]] bool terminal(std::uint32_t x) const { return active_[x] || nb_[x] >= 2; }
  [[nodiscard]] std::size_t block_count() const { return blocks_.size(); }
  [[nodiscard]] bool block_alive(std::uint32_t b) const { return blocks_[b].alive; }
  [[nodiscard]] std::span<const std::uint32_t> verts(std::uint32_t b) const {
    return {verts_.data() + blocks_[b].vbegin, verts_.data() + blocks_[b].vend};
  }
  [[nodiscard]] std::span<const Pair> edges(std::uint32_t b) const {
    return {edges_.data() + blocks_[b].ebegin, edges_.data() + blocks_[b].eend};
  }
  [[nodiscard]] const std::vector<char>& alive() const { return alive_; }

 private:
  struct Item {
    bool vertex;
    std::uint32_t id;
  };

  std::span<std::uint32_t> memberships(std::uint32_t x) {
    return {member_.items.data() + member_.offset[x], member_.items.data() + member_.offset[x + 1]};
  }

  std::uint32_t cut_of(std::uint32_t b, std::uint32_t skip) const {
    for (auto x : verts(b)) {
      if (x != skip && nb_[x] >= 2) return x;
    }
    return kNone;
  }

  std::uint32_t other_block(std::uint32_t x, std::uint32_t skip) const {
    for (auto b : member_[x]) {
      if (b != skip && blocks_[b].alive) return b;
    }
    return kNone;
  }

  void drop_block(std::uint32_t b, std::uint32_t keep) {
    blocks_[b].alive = false;
    for (auto x : verts(b)) {
      if (x == keep) continue;
      alive_[x] = 0;
      nb_[x] = 0;
    }
  }

  // called after x lost one block
  void lost_block(std::uint32_t x) {
    --nb_[x];
    if (nb_[x] == 1) {
      auto b = other_block(x, kNone);
      auto& block = blocks_[b];
      --block.cuts;
      work_.push_back({false, b});
      if (block.cuts == 2) {
        for (auto y : verts(b)) {
          if (nb_[y] == 2) work_.push_back({true, y});
        }
      }
    } else if (nb_[x] == 2) {
      work_.push_back({true, x});
    }
  }

  void leaf(std::uint32_t b) {
    const auto& block = blocks_[b];
    if (!block.alive || block.cuts > 1) return;
    if (block.cuts == 0) {
      if (block.actives == 0) drop_block(b, kNone);
      return;
    }
    auto c = cut_of(b, kNone);
    if (block.actives - active_[c] != 0) return;
    drop_block(b, c);
    lost_block(c);
  }

  void chain(std::uint32_t w) {
    if (!alive_[w] || active_[w] || nb_[w] != 2) return;
    auto b1 = other_block(w, kNone);
    auto b2 = other_block(w, b1);
    for (auto b : {b1, b2}) {
      if (blocks_[b].cuts != 2 || blocks_[b].actives != 0) return;
    }
    auto u = cut_of(b1, w), v = cut_of(b2, w);
    drop_block(b1, u);
    drop_block(b2, v);
    auto id = static_cast<std::uint32_t>(blocks_.size());
    Block fresh{static_cast<std::uint32_t>(verts_.size()), 0, static_cast<std::uint32_t>(edges_.size()), 0};
    verts_.push_back(u);
    verts_.push_back(v);
    edges_.push_back(std::minmax(u, v));
    fresh.vend = fresh.vbegin + 2;
    fresh.eend = fresh.ebegin + 1;
    fresh.cuts = 2;
    blocks_.push_back(fresh);
    for (auto [x, old] : {std::pair{u, b1}, std::pair{v, b2}}) {
      auto mine = memberships(x);
      std::replace(mine.begin(), mine.end(), old, id);
      work_.push_back({true, x});
    }
  }

  std::vector<char> active_;
  std::vector<char> alive_;
  std::vector<std::uint32_t> nb_;
  FlatLists member_;
  std::vector<Block> blocks_;
  std::vector<std::uint32_t> verts_;
  std::vector<Pair> edges_;
  std::vector<Item> work_;
};

/// Keeps the vertices that appear in `edges` or are active, and emits with
/// identity representatives.
inline ReducedGraph emit_identity(const Dense& d, std::vector<Pair> edges, bool dedupe) {
  if (dedupe) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  std::vector<char> keep(d.n(), 0);
  for (auto [a, b] : edges) keep[a] = keep[b] = 1;
  for (auto a : d.actives) keep[a] = 1;
  return emit(d, keep, edges, d.actives);
}

inline ReducedGraph bicon(const Dense& d) {
  BlockPruner pruner(d);
  pruner.run();
  std::vector<Pair> edges;
  edges.reserve(2 * d.actives.size() + pruner.block_count());
  std::vector<std::uint32_t> terms;
  for (std::uint32_t b = 0; b < pruner.block_count(); ++b) {
    if (!pruner.block_alive(b)) continue;
    terms.clear();
    for (auto x : pruner.verts(b)) {
      if (pruner.terminal(x)) terms.push_back(x);
    }
    if (terms.size() == 2) {
      edges.push_back(std::minmax(terms[0], terms[1]));
    } else if (terms.size() >= 3) {
      for (std::size_t i = 0; i < terms.size(); ++i) {
        edges.push_back(std::minmax(terms[i], terms[(i + 1) % terms.size()]));
      }
    }
  }
  // distinct blocks share at most one vertex, so no edge repeats
  return emit_identity(d, std::move(edges), false);
}

// Triconnectivity inside one block.

/// A triconnected scaffold on `k`: an edge, a triangle, or a wheel with k[0]
/// as hub.
inline std::vector<Pair> scaffold(const std::vector<std::uint32_t>& k) {
  std::vector<Pair> out;
  if (k.size() == 2) {
    out.emplace_back(k[0], k[1]);
  } else if (k.size() == 3) {
    out = {{k[0], k[1]}, {k[1], k[2]}, {k[2], k[0]}};
  } else if (k.size() >= 4) {
    for (std::size_t i = 1; i < k.size(); ++i) {
      out.emplace_back(k[0], k[i]);
      out.emplace_back(k[i], k[i + 1 < k.size() ? i + 1 : 1]);
    }
  }
  return out;
}

class TriconBlock {
 public:
  template <class Terminal>
  TriconBlock(std::vector<Pair> edges, Terminal terminal) : edges_(std::move(edges)) {
    for (auto [a, b] : edges_) {
      for (auto x : {a, b}) {
        if (!is_terminal_.contains(x)) is_terminal_.emplace(x, terminal(x));
      }
    }
  }

  std::vector<Pair> run() {
    while (true) {
      auto before = measure(edges_);
      if (!round()) break;
      if (measure(edges_) >= before) break;
    }
    return edges_;
  }

 private:
  struct Node {
    SpqrNode node;
    bool dead = false;
  };

  static std::size_t measure(const std::vector<Pair>& edges) {
    std::vector<std::uint32_t> vs;
    for (auto [a, b] : edges) vs.push_back(a), vs.push_back(b);
    std::sort(vs.begin(), vs.end());
    return static_cast<std::size_t>(std::unique(vs.begin(), vs.end()) - vs.begin()) + edges.size();
  }

  bool terminal(VertexId x) const { return is_terminal_.at(static_cast<std::uint32_t>(x)); }

  static std::size_t virtual_degree(const SpqrNode& n, const std::vector<Node>& all) {
    std::size_t d = 0;
    for (auto& e : n.edges) d += !e.real && !all[e.twin].dead;
    return d;
  }

  bool round() {
    MultiGraph g;
    for (auto [a, b] : edges_) g.add_edge(a, b);
    if (g.vertex_count() <= 3 || g.edge_count() < 3) return false;
    auto tree = spqr_tree(g);
    std::vector<Node> nodes;
    for (auto& n : tree.nodes) nodes.push_back({n, false});
    bool changed = peel(nodes);
    for (auto& n : nodes) {
      if (!n.dead) changed = shrink(n, nodes) || changed;
    }
    DisjointSets merged(0);
    std::unordered_map<VertexId, std::uint32_t> index;
    std::vector<VertexId> names;
    auto idx = [&](VertexId v) {
      auto [it, inserted] = index.try_emplace(v, static_cast<std::uint32_t>(names.size()));
      if (inserted) names.push_back(v);
      return it->second;
    };
    for (auto& n : nodes) {
      for (auto v : n.node.vertices) idx(v);
    }
    merged = DisjointSets(names.size());
    changed = compress(nodes, merged, idx) || changed;
    if (!changed) return false;

    std::vector<Pair> next;
    for (auto& n : nodes) {
      if (n.dead) continue;
      for (auto& e : n.node.edges) {
        if (!e.real) continue;
        auto a = static_cast<std::uint32_t>(names[merged.find(idx(e.u))]);
        auto b = static_cast<std::uint32_t>(names[merged.find(idx(e.v))]);
        if (a != b) next.push_back(std::minmax(a, b));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    edges_ = std::move(next);
    return true;
  }

  // Replaces leaf split components without terminals by a single edge. The
  // pair of a tree edge is never separable by two vertices, so the edge is
  // always the right replacement.
  bool peel(std::vector<Node>& nodes) {
    bool changed = false;
    std::vector<std::size_t> work;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (virtual_degree(nodes[i].node, nodes) == 1) work.push_back(i);
    }
    while (!work.empty()) {
      auto i = work.back();
      work.pop_back();
      auto& leaf = nodes[i];
      if (leaf.dead || virtual_degree(leaf.node, nodes) != 1) continue;
      const SkeletonEdge* link = nullptr;
      for (auto& e : leaf.node.edges) {
        if (!e.real && !nodes[e.twin].dead) link = &e;
      }
      bool busy = false;
      for (auto x : leaf.node.vertices) {
        if (x != link->u && x != link->v && terminal(x)) busy = true;
      }
      if (busy) continue;
      auto j = link->twin;
      leaf.dead = true;
      for (auto& e : nodes[j].node.edges) {
        if (!e.real && e.twin == i) e.real = true;
      }
      changed = true;
      if (virtual_degree(nodes[j].node, nodes) == 1) work.push_back(j);
    }
    return changed;
  }

  bool kept(const SpqrNode& n, const std::vector<Node>& nodes, VertexId x) const {
    if (terminal(x)) return true;
    for (auto& e : n.edges) {
      if (!e.real && !nodes[e.twin].dead && (e.u == x || e.v == x)) return true;
    }
    return false;
  }

  bool shrink(Node& self, const std::vector<Node>& nodes) {
    auto& n = self.node;
    // virtual edges to dead nodes behave as real edges from here on
    for (auto& e : n.edges) {
      if (!e.real && nodes[e.twin].dead) e.real = true;
    }
    if (n.type == SpqrNodeType::P) {
      std::vector<SkeletonEdge> out;
      bool has_real = false;
      for (auto& e : n.edges) {
        if (e.real && has_real) continue;
        has_real = has_real || e.real;
        out.push_back(e);
      }
      bool changed = out.size() != n.edges.size();
      n.edges = std::move(out);
      return changed;
    }
    if (n.type == SpqrNodeType::S) return shrink_cycle(n, nodes);
    if (n.type == SpqrNodeType::R) return shrink_rigid(n, nodes);
    return false;
  }

  bool shrink_cycle(SpqrNode& n, const std::vector<Node>& nodes) {
    const auto& cyc = n.vertices;
    const auto len = cyc.size();
    std::vector<char> keep(len);
    std::size_t start = len;
    for (std::size_t i = 0; i < len; ++i) {
      keep[i] = kept(n, nodes, cyc[i]);
      if (keep[i] && start == len) start = i;
    }
    if (start == len) return false;
    std::vector<VertexId> order;
    for (std::size_t s = 0; s < len;) {
      auto i = (start + s) % len;
      order.push_back(cyc[i]);
      std::size_t run = 0;
      while (s + 1 + run < len && !keep[(start + s + 1 + run) % len]) ++run;
      if (run > 0) order.push_back(cyc[(i + 1) % len]);
      s += 1 + run;
    }
    if (order.size() == len) return false;
    auto find_edge = [&](VertexId a, VertexId b) -> const SkeletonEdge* {
      for (auto& e : n.edges) {
        if (std::minmax(e.u, e.v) == std::minmax(a, b)) return &e;
      }
      return nullptr;
    };
    std::vector<SkeletonEdge> edges;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto a = order[i], b = order[(i + 1) % order.size()];
      auto* old = find_edge(a, b);
      edges.push_back(old ? *old : SkeletonEdge{a, b, true, 0, kNone});
    }
    n.edges = std::move(edges);
    n.vertices = std::move(order);
    return true;
  }

  bool shrink_rigid(SpqrNode& n, const std::vector<Node>& nodes) {
    std::vector<std::uint32_t> k;
    for (auto x : n.vertices) {
      if (kept(n, nodes, x)) k.push_back(static_cast<std::uint32_t>(x));
    }
    if (k.size() == n.vertices.size() || k.size() < 2) return false;
    std::vector<SkeletonEdge> edges;
    for (auto& e : n.edges) {
      if (!e.real) edges.push_back(e);
    }
    for (auto [a, b] : scaffold(k)) edges.push_back({a, b, true, 0, kNone});
    if (edges.size() + k.size() >= n.edges.size() + n.vertices.size()) return false;
    n.edges = std::move(edges);
    n.vertices.assign(k.begin(), k.end());
    return true;
  }

  // Splices out a node of tree degree two whose only terminals are shared by
  // both of its split pairs.
  template <class Index>
  bool compress(std::vector<Node>& nodes, DisjointSets& merged, Index& idx) {
    bool changed = false;
    std::vector<char> used(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto& mid = nodes[i];
      if (mid.dead || used[i] || mid.node.type == SpqrNodeType::P) continue;
      std::vector<const SkeletonEdge*> links;
      for (auto& e : mid.node.edges) {
        if (!e.real && !nodes[e.twin].dead) links.push_back(&e);
      }
      if (links.size() != 2) continue;
      auto j1 = links[0]->twin, j3 = links[1]->twin;
      if (used[j1] || used[j3]) continue;
      if (mid.node.type == SpqrNodeType::R && nodes[j1].node.type == SpqrNodeType::S &&
          nodes[j3].node.type == SpqrNodeType::S) {
        continue;
      }
      VertexId u = links[0]->u, v = links[0]->v, x = links[1]->u, y = links[1]->v;
      std::vector<VertexId> shared;
      for (auto p : {u, v}) {
        if (p == x || p == y) shared.push_back(p);
      }
      bool ok = shared.size() <= 1;
      for (auto w : mid.node.vertices) {
        if (terminal(w) && !(shared.size() == 1 && w == shared[0])) ok = false;
      }
      if (!ok) continue;
      if (shared.size() == 1) {
        auto s = shared[0];
        auto a = u == s ? v : u;
        auto b = x == s ? y : x;
        merged.unite(idx(a), idx(b));
      } else {
        if (mid.node.type == SpqrNodeType::S) {
          // walk from v away from u; the first of x, y met pairs with v
          const auto& cyc = mid.node.vertices;
          const auto len = cyc.size();
          std::size_t pv = 0, pu = 0;
          for (std::size_t t = 0; t < len; ++t) {
            if (cyc[t] == v) pv = t;
            if (cyc[t] == u) pu = t;
          }
          std::size_t step = (pu + 1) % len == pv ? 1 : len - 1;
          for (std::size_t t = (pv + step) % len;; t = (t + step) % len) {
            if (cyc[t] == y) std::swap(x, y);
            if (cyc[t] == x) break;
          }
          merged.unite(idx(v), idx(x));
          merged.unite(idx(u), idx(y));
        } else {
          merged.unite(idx(u), idx(x));
          merged.unite(idx(v), idx(y));
        }
      }
      mid.dead = true;
      used[i] = used[j1] = used[j3] = 1;
      changed = true;
    }
    return changed;
  }

  std::vector<Pair> edges_;
  std::unordered_map<std::uint32_t, bool> is_terminal_;
};

inline ReducedGraph tricon(const Dense& d) {
  BlockPruner pruner(d);
  pruner.run();
  std::vector<Pair> edges;
  for (std::uint32_t b = 0; b < pruner.block_count(); ++b) {
    if (!pruner.block_alive(b)) continue;
    std::size_t terms = 0;
    for (auto x : pruner.verts(b)) terms += pruner.terminal(x);
    if (terms <= 1) continue;
    auto block_edges = pruner.edges(b);
    if (pruner.verts(b).size() <= 3) {
      edges.insert(edges.end(), block_edges.begin(), block_edges.end());
      continue;
    }
    TriconBlock work({block_edges.begin(), block_edges.end()}, [&](std::uint32_t x) { return pruner.terminal(x); });
    auto out = work.run();
    edges.insert(edges.end(), out.begin(), out.end());
  }
  return emit_identity(d, std::move(edges), true);
}

}  // namespace detail::reduce

inline ReducedGraph reduce_2edge(const MultiGraph& g, std::span<const VertexId> active) {
  return detail::reduce::two_edge(detail::reduce::densify(g, active, false));
}

inline ReducedGraph reduce_3edge(const MultiGraph& g, std::span<const VertexId> active) {
  return detail::reduce::three_edge(detail::reduce::densify(g, active, false));
}

/// Parallel edges never matter to vertex cuts. Blocks see them as ordinary
/// back edges; the triconnectivity pass wants the simple graph.
inline ReducedGraph reduce_bicon(const MultiGraph& g, std::span<const VertexId> active) {
  return detail::reduce::bicon(detail::reduce::densify(g, active, false));
}

inline ReducedGraph reduce_tricon(const MultiGraph& g, std::span<const VertexId> active) {
  return detail::reduce::tricon(detail::reduce::densify(g, active, true));
}

inline std::size_t count_distinct(std::span<const VertexId> active) {
  std::vector<VertexId> v(active.begin(), active.end());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

/// Dispatches to the mode's reducer and enforces the size ceiling.
inline ReducedGraph reduce(QueryMode mode, const MultiGraph& g, std::span<const VertexId> active,
                           const ReduceConfig& config = {}) {
  ReducedGraph out;
  switch (mode) {
    case QueryMode::TwoEdge: out = reduce_2edge(g, active); break;
    case QueryMode::ThreeEdge: out = reduce_3edge(g, active); break;
    case QueryMode::Biconnected: out = reduce_bicon(g, active); break;
    case QueryMode::Triconnected: out = reduce_tricon(g, active); break;
  }
  if (config.inject_fault && out.graph.edge_count() > 0) {
    MultiGraph cut;
    for (auto v : out.graph.vertices()) cut.add_vertex(v);
    auto es = out.graph.edges();
    for (std::size_t i = 1; i < es.size(); ++i) cut.add_edge(es[i].key, es[i].u, es[i].v);
    out.graph = std::move(cut);
    out.edges = out.graph.edge_count();
  }
  if (config.check_size) {
    auto k = std::max<std::size_t>(1, out.f.size());  // f has one entry per distinct active
    if (static_cast<double>(out.size()) > config.bound(mode) * static_cast<double>(k)) {
      std::ostringstream msg;
      msg << "reduce(" << short_name(mode) << "): output size " << out.size() << " exceeds " << config.bound(mode)
          << " * " << k;
      throw ReduceError(msg.str());
    }
  }
  return out;
}

}  // namespace offcon
