#pragma once

// SPQR tree of a biconnected multigraph. Built by repeatedly splitting at a
// separation pair until every piece is a bond, a triangle or triconnected,
// then merging adjacent bonds and adjacent polygons. Degree-2 paths are cut
// off in O(n + m); otherwise every vertex is tried once per lineage of
// pieces, so a rigid piece of n vertices costs O(n (n + m)).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "offcon/decompositions.hpp"
#include "offcon/multigraph.hpp"

namespace offcon {

enum class SpqrNodeType { S, P, R, Q };

inline const char* to_string(SpqrNodeType t) {
  switch (t) {
    case SpqrNodeType::S: return "S";
    case SpqrNodeType::P: return "P";
    case SpqrNodeType::R: return "R";
    case SpqrNodeType::Q: return "Q";
  }
  return "?";
}

struct SkeletonEdge {
  VertexId u;
  VertexId v;
  bool real;
  EdgeKey key;       // meaningful when real
  std::size_t twin;  // neighbouring tree node when virtual
};

struct SpqrNode {
  SpqrNodeType type;
  std::vector<VertexId> vertices;  // cycle order for S-nodes
  std::vector<SkeletonEdge> edges;
  std::optional<std::size_t> parent;
  std::optional<std::pair<VertexId, VertexId>> split_pair;
  std::vector<std::size_t> children;

  [[nodiscard]] MultiGraph skeleton() const {
    MultiGraph g;
    for (auto v : vertices) g.add_vertex(v);
    EdgeKey k = 0;
    for (const auto& e : edges) g.add_edge(e.real ? e.key : k, e.u, e.v), ++k;
    return g;
  }
  [[nodiscard]] bool contains(VertexId x) const {
    return std::find(vertices.begin(), vertices.end(), x) != vertices.end();
  }
};

struct SpqrTree {
  std::vector<SpqrNode> nodes;
  std::size_t root = 0;
};

namespace detail::spqr {

struct PieceEdge {
  std::uint32_t a, b;
  std::int64_t id;  // >= 0: real edge index; < 0: virtual edge ~id
  [[nodiscard]] bool is_virtual() const { return id < 0; }
};

enum class Kind { Unknown, Bond, Polygon, Rigid };

struct Builder {
  std::vector<std::vector<PieceEdge>> pieces;
  std::vector<Kind> kind;
  std::vector<char> alive;
  std::vector<std::vector<std::uint32_t>> clean;  // vertices known to have no separation partner
  std::int64_t next_virtual = 0;
  std::deque<std::size_t> work;

  std::int64_t fresh() { return ~(next_virtual++); }

  std::size_t add_piece(std::vector<PieceEdge> edges, Kind k, std::vector<std::uint32_t> known = {}) {
    pieces.push_back(std::move(edges));
    kind.push_back(k);
    alive.push_back(1);
    clean.push_back(std::move(known));
    return pieces.size() - 1;
  }

  /// Replaces every group of >= 2 parallel edges in `edges` by one virtual
  /// edge, emitting a bond piece per group.
  void bundle(std::vector<PieceEdge>& edges) {
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::size_t>> order;
    order.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) order.push_back({std::minmax(edges[i].a, edges[i].b), i});
    std::sort(order.begin(), order.end());
    std::vector<char> drop(edges.size(), 0);
    std::vector<PieceEdge> added;
    for (std::size_t i = 0; i < order.size();) {
      auto j = i;
      while (j < order.size() && order[j].first == order[i].first) ++j;
      if (j - i >= 2) {
        auto [a, b] = order[i].first;
        auto vid = fresh();
        std::vector<PieceEdge> bond;
        for (auto k = i; k < j; ++k) {
          bond.push_back(edges[order[k].second]);
          drop[order[k].second] = 1;
        }
        bond.push_back({a, b, vid});
        add_piece(std::move(bond), Kind::Bond);
        added.push_back({a, b, vid});
      }
      i = j;
    }
    if (added.empty()) return;
    std::vector<PieceEdge> kept;
    kept.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!drop[i]) kept.push_back(edges[i]);
    }
    kept.insert(kept.end(), added.begin(), added.end());
    edges = std::move(kept);
  }

  static std::vector<std::uint32_t> vertices_of(const std::vector<PieceEdge>& edges) {
    std::vector<std::uint32_t> vs;
    for (auto& e : edges) vs.push_back(e.a), vs.push_back(e.b);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  enum class Split { None, Cycle, Found };

  /// First cut vertex of the graph with `a` removed, or kNone. The graph
  /// must stay connected without `a`.
  static std::uint32_t cut_vertex_without(const Csr& c, std::uint32_t a, std::vector<std::uint32_t>& disc,
                                          std::vector<std::uint32_t>& low) {
    const auto n = c.n();
    disc.assign(n, kNone);
    low.assign(n, 0);
    struct Frame {
      std::uint32_t v, parent_edge, it;
    };
    std::vector<Frame> stack;
    stack.reserve(n);
    const std::uint32_t root = a == 0 ? 1 : 0;
    std::uint32_t clock = 0, root_children = 0;
    disc[root] = low[root] = clock++;
    stack.push_back({root, kNone, c.begin(root)});
    while (!stack.empty()) {
      auto& f = stack.back();
      const auto v = f.v;
      if (f.it < c.end(v)) {
        const auto i = f.it++;
        const auto w = c.target[i];
        if (w == a || c.edge[i] == f.parent_edge) continue;
        if (disc[w] == kNone) {
          disc[w] = low[w] = clock++;
          if (v == root) ++root_children;
          stack.push_back({w, c.edge[i], c.begin(w)});
        } else {
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      stack.pop_back();
      if (stack.empty()) break;
      const auto p = stack.back().v;
      low[p] = std::min(low[p], low[v]);
      if (p != root && low[v] >= disc[p]) return p;
    }
    return root_children > 1 ? root : kNone;
  }

  /// Finds a separation pair of a simple biconnected piece on >= 4 vertices
  /// and labels its vertices by component once the pair is gone. Vertices
  /// listed in `clean` are known to have no partner; ones found partnerless
  /// here are appended.
  static Split find_split(const std::vector<PieceEdge>& edges, const std::vector<std::uint32_t>& vs,
                          std::vector<std::uint32_t>& clean, std::uint32_t& sa, std::uint32_t& sb,
                          std::vector<std::uint32_t>& label) {
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    local.reserve(vs.size());
    for (std::uint32_t i = 0; i < vs.size(); ++i) local.emplace(vs[i], i);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
    ends.reserve(edges.size());
    for (auto& e : edges) ends.emplace_back(local[e.a], local[e.b]);
    const auto n = static_cast<std::uint32_t>(vs.size());
    auto csr = Csr::build(n, std::move(ends));

    bool cycle = true;
    for (std::uint32_t v = 0; v < n && cycle; ++v) cycle = csr.degree(v) == 2;
    if (cycle) return Split::Cycle;

    std::sort(clean.begin(), clean.end());
    const auto known = clean.size();
    std::vector<std::uint32_t> disc, low;
    for (std::uint32_t a = 0; a < n; ++a) {
      if (std::binary_search(clean.begin(), clean.begin() + static_cast<std::ptrdiff_t>(known), vs[a])) continue;
      auto b = cut_vertex_without(csr, a, disc, low);
      if (b == kNone) {
        clean.push_back(vs[a]);
        continue;
      }
      std::vector<char> skip(n, 0);
      skip[a] = skip[b] = 1;
      std::uint32_t count = 0;
      label = component_labels(csr, count, nullptr, &skip);
      sa = vs[a];
      sb = vs[b];
      return Split::Found;
    }
    return Split::None;
  }

  /// Cuts every maximal path of degree-2 vertices out of piece `p` as its own
  /// polygon, leaving one virtual edge per path behind. Returns false when
  /// the piece has no such path or is a cycle.
  bool split_chains(std::size_t p, const std::vector<std::uint32_t>& vs) {
    const auto& edges = pieces[p];
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    local.reserve(vs.size());
    for (std::uint32_t i = 0; i < vs.size(); ++i) local.emplace(vs[i], i);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
    ends.reserve(edges.size());
    for (auto& e : edges) ends.emplace_back(local[e.a], local[e.b]);
    const auto n = static_cast<std::uint32_t>(vs.size());
    auto csr = Csr::build(n, std::move(ends));

    struct Chain {
      std::uint32_t y, z;
      std::vector<std::uint32_t> edges;
    };
    std::vector<Chain> found;
    std::vector<char> inner(n, 0), in_chain(edges.size(), 0);
    bool any_branch = false;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (csr.degree(v) != 2) {
        any_branch = true;
        continue;
      }
      if (inner[v]) continue;
      Chain c;
      inner[v] = 1;
      std::uint32_t tips[2];
      for (std::uint32_t side = 0; side < 2; ++side) {
        auto i = csr.begin(v) + side;
        auto prev = v, cur = csr.target[i];
        c.edges.push_back(csr.edge[i]);
        while (csr.degree(cur) == 2 && cur != v) {
          inner[cur] = 1;
          auto j = csr.begin(cur);
          if (csr.target[j] == prev) ++j;
          c.edges.push_back(csr.edge[j]);
          prev = cur;
          cur = csr.target[j];
        }
        tips[side] = cur;
      }
      c.y = tips[0];
      c.z = tips[1];
      found.push_back(std::move(c));
    }
    if (!any_branch || found.empty()) return false;
    for (auto& c : found) {
      for (auto e : c.edges) in_chain[e] = 1;
    }
    // keep one path in place if nothing else would be left
    if (std::all_of(in_chain.begin(), in_chain.end(), [](char x) { return x != 0; })) {
      for (auto e : found.back().edges) in_chain[e] = 0;
      for (auto e : found.back().edges) {
        for (auto x : {csr.ends[e].first, csr.ends[e].second}) {
          if (csr.degree(x) == 2) inner[x] = 0;
        }
      }
      found.pop_back();
      if (found.empty()) return false;
    }

    auto owned = std::move(pieces[p]);  // add_piece below may reallocate
    std::vector<PieceEdge> rest;
    rest.reserve(owned.size());
    for (std::size_t i = 0; i < owned.size(); ++i) {
      if (!in_chain[i]) rest.push_back(owned[i]);
    }
    std::vector<std::size_t> polygons;
    for (auto& c : found) {
      std::vector<PieceEdge> poly;
      poly.reserve(c.edges.size() + 1);
      for (auto e : c.edges) poly.push_back(owned[e]);
      auto vid = fresh();
      poly.push_back({vs[c.y], vs[c.z], vid});
      rest.push_back({vs[c.y], vs[c.z], vid});
      polygons.push_back(add_piece(std::move(poly), Kind::Polygon));
    }
    std::vector<std::uint32_t> known;
    for (auto x : clean[p]) {
      if (!inner[local[x]]) known.push_back(x);
    }
    alive[p] = 0;
    bundle(rest);
    auto r = add_piece(std::move(rest), Kind::Unknown, std::move(known));
    work.push_back(r);
    return true;
  }

  void process(std::size_t root_piece) {
    work = {root_piece};
    while (!work.empty()) {
      auto p = work.front();
      work.pop_front();
      auto vs = vertices_of(pieces[p]);
      if (vs.size() == 2) {
        kind[p] = Kind::Bond;
        continue;
      }
      if (vs.size() == 3) {
        kind[p] = Kind::Polygon;
        continue;
      }
      if (split_chains(p, vs)) continue;
      std::uint32_t a = 0, b = 0;
      std::vector<std::uint32_t> label;
      auto known = std::move(clean[p]);
      auto split = find_split(pieces[p], vs, known, a, b, label);
      if (split != Split::Found) {
        kind[p] = split == Split::Cycle ? Kind::Polygon : Kind::Rigid;
        continue;
      }
      std::unordered_map<std::uint32_t, std::uint32_t> pos;
      for (std::uint32_t i = 0; i < vs.size(); ++i) pos.emplace(vs[i], i);
      auto in_first = [&](std::uint32_t x) { return x != a && x != b && label[pos[x]] == 0; };
      std::vector<PieceEdge> first, second;
      for (auto& e : pieces[p]) {
        (in_first(e.a) || in_first(e.b) ? first : second).push_back(e);
      }
      // separation pairs of either side are separation pairs here too
      std::vector<std::uint32_t> known_first, known_second;
      for (auto x : known) {
        if (x == a || x == b || in_first(x)) known_first.push_back(x);
        if (!in_first(x)) known_second.push_back(x);
      }
      auto vid = fresh();
      first.push_back({a, b, vid});
      second.push_back({a, b, vid});
      bundle(second);
      alive[p] = 0;
      work.push_back(add_piece(std::move(first), Kind::Unknown, std::move(known_first)));
      work.push_back(add_piece(std::move(second), Kind::Unknown, std::move(known_second)));
    }
  }
};

/// Vertices of a cycle given by its edges, in walking order.
inline std::vector<VertexId> cycle_order(const std::vector<SkeletonEdge>& edges) {
  std::unordered_map<VertexId, std::vector<std::size_t>> at;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    at[edges[i].u].push_back(i);
    at[edges[i].v].push_back(i);
  }
  std::vector<VertexId> order;
  std::vector<char> used(edges.size(), 0);
  VertexId cur = edges[0].u;
  std::size_t e = 0;
  for (std::size_t step = 0; step < edges.size(); ++step) {
    order.push_back(cur);
    used[e] = 1;
    cur = edges[e].u == cur ? edges[e].v : edges[e].u;
    for (auto f : at[cur]) {
      if (!used[f]) {
        e = f;
        break;
      }
    }
  }
  return order;
}

}  // namespace detail::spqr

/// SPQR tree of a biconnected multigraph with at least three edges. Real
/// edges sit directly in the skeletons; Q-nodes are only introduced by
/// with_q_nodes().
inline SpqrTree spqr_tree(const MultiGraph& g) {
  using namespace detail::spqr;
  if (g.edge_count() < 3) throw std::invalid_argument("spqr_tree: fewer than three edges");
  {
    auto csr = detail::Csr::of(g);
    std::uint32_t comps = 0;
    detail::component_labels(csr, comps);
    auto low = detail::dfs_low(csr);
    if (comps != 1 || low.block_edges.size() != 1) {
      throw std::invalid_argument("spqr_tree: graph is not biconnected");
    }
  }

  Builder b;
  std::vector<PieceEdge> main;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    main.push_back({g.index_of(e.u), g.index_of(e.v), static_cast<std::int64_t>(i)});
  }
  b.bundle(main);
  if (Builder::vertices_of(main).size() == 2 && main.size() == 1) {
    // every edge was parallel: the bond alone is the tree
    auto& bond = b.pieces.back();
    bond.pop_back();
  } else {
    b.process(b.add_piece(std::move(main), Kind::Unknown));
  }

  // merge adjacent bonds and adjacent polygons
  const auto pc = b.pieces.size();
  std::unordered_map<std::int64_t, std::vector<std::size_t>> owners;
  for (std::size_t p = 0; p < pc; ++p) {
    if (!b.alive[p]) continue;
    for (auto& e : b.pieces[p]) {
      if (e.is_virtual()) owners[e.id].push_back(p);
    }
  }
  detail::DisjointSets sets(pc);
  std::unordered_map<std::int64_t, char> dissolved;
  std::vector<std::int64_t> vids;
  for (auto& [vid, own] : owners) vids.push_back(vid);
  std::sort(vids.begin(), vids.end(), std::greater<>());
  for (auto vid : vids) {
    auto& own = owners[vid];
    auto k0 = b.kind[own[0]], k1 = b.kind[own[1]];
    if (k0 == k1 && (k0 == Kind::Bond || k0 == Kind::Polygon)) {
      sets.unite(static_cast<std::uint32_t>(own[0]), static_cast<std::uint32_t>(own[1]));
      dissolved[vid] = 1;
    }
  }

  SpqrTree tree;
  std::vector<std::size_t> node_of(pc, detail::kNone);
  for (std::size_t p = 0; p < pc; ++p) {
    if (!b.alive[p]) continue;
    auto r = sets.find(static_cast<std::uint32_t>(p));
    if (node_of[r] == detail::kNone) {
      node_of[r] = tree.nodes.size();
      auto& node = tree.nodes.emplace_back();
      node.type = b.kind[p] == Kind::Bond      ? SpqrNodeType::P
                  : b.kind[p] == Kind::Polygon ? SpqrNodeType::S
                                               : SpqrNodeType::R;
    }
    node_of[p] = node_of[r];
  }
  std::unordered_map<std::int64_t, std::vector<std::pair<std::size_t, std::size_t>>> slots;
  for (std::size_t p = 0; p < pc; ++p) {
    if (!b.alive[p]) continue;
    auto& node = tree.nodes[node_of[p]];
    for (auto& e : b.pieces[p]) {
      if (e.is_virtual() && dissolved.contains(e.id)) continue;
      SkeletonEdge se{g.vertices()[e.a], g.vertices()[e.b], !e.is_virtual(), 0, detail::kNone};
      if (se.real) se.key = g.edges()[static_cast<std::size_t>(e.id)].key;
      if (e.is_virtual()) slots[e.id].emplace_back(node_of[p], node.edges.size());
      node.edges.push_back(se);
      if (se.real && e.id == 0) tree.root = node_of[p];
    }
  }
  for (auto& [vid, places] : slots) {
    auto [n0, i0] = places[0];
    auto [n1, i1] = places[1];
    tree.nodes[n0].edges[i0].twin = n1;
    tree.nodes[n1].edges[i1].twin = n0;
  }
  for (auto& node : tree.nodes) {
    if (node.type == SpqrNodeType::S) {
      node.vertices = detail::spqr::cycle_order(node.edges);
    } else {
      for (auto& e : node.edges) {
        for (auto x : {e.u, e.v}) {
          if (!node.contains(x)) node.vertices.push_back(x);
        }
      }
    }
  }
  // orient from the root
  std::vector<char> seen(tree.nodes.size(), 0);
  std::deque<std::size_t> queue{tree.root};
  seen[tree.root] = 1;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto& e : tree.nodes[x].edges) {
      if (e.real || seen[e.twin]) continue;
      seen[e.twin] = 1;
      tree.nodes[e.twin].parent = x;
      tree.nodes[e.twin].split_pair = std::minmax(e.u, e.v);
      tree.nodes[x].children.push_back(e.twin);
      queue.push_back(e.twin);
    }
  }
  return tree;
}

/// Copy of `tree` where every real skeleton edge is replaced by a virtual
/// edge to a Q-node child holding just that edge.
inline SpqrTree with_q_nodes(const SpqrTree& tree) {
  SpqrTree out = tree;
  const auto base = tree.nodes.size();
  for (std::size_t x = 0; x < base; ++x) {
    for (std::size_t i = 0; i < out.nodes[x].edges.size(); ++i) {
      auto e = out.nodes[x].edges[i];
      if (!e.real) continue;
      SpqrNode q;
      q.type = SpqrNodeType::Q;
      q.vertices = {e.u, e.v};
      q.edges = {e};
      q.parent = x;
      q.split_pair = std::minmax(e.u, e.v);
      auto qi = out.nodes.size();
      out.nodes.push_back(std::move(q));
      out.nodes[x].edges[i].real = false;
      out.nodes[x].edges[i].twin = qi;
      out.nodes[x].children.push_back(qi);
    }
  }
  return out;
}

/// Glues all skeletons back together along their virtual edges.
inline MultiGraph merge_skeletons(const SpqrTree& tree) {
  MultiGraph g;
  for (auto& node : tree.nodes) {
    for (auto v : node.vertices) g.add_vertex(v);
  }
  for (std::size_t x = 0; x < tree.nodes.size(); ++x) {
    for (auto& e : tree.nodes[x].edges) {
      if (e.real) {
        g.add_edge(e.key, e.u, e.v);
        continue;
      }
      // a virtual edge must be mirrored by exactly one edge of its twin
      const auto& other = tree.nodes.at(e.twin);
      if (other.type == SpqrNodeType::Q) {
        // the Q-node carries the real edge itself
        if (other.edges.size() != 1 || std::minmax(other.edges[0].u, other.edges[0].v) != std::minmax(e.u, e.v)) {
          throw std::logic_error("merge_skeletons: Q-node does not match its slot");
        }
        continue;
      }
      auto mirrors = std::count_if(other.edges.begin(), other.edges.end(), [&](const SkeletonEdge& f) {
        return !f.real && f.twin == x && std::minmax(f.u, f.v) == std::minmax(e.u, e.v);
      });
      if (mirrors != 1) throw std::logic_error("merge_skeletons: unmatched virtual edge");
    }
  }
  return g;
}

namespace detail::spqr {

/// True when the part of the graph behind virtual edge `e` of `node` holds a
/// vertex other than the edge's endpoints.
inline bool behind_has_internal(const SpqrTree& tree, std::size_t node, const SkeletonEdge& e) {
  const auto& other = tree.nodes[e.twin];
  if (other.type != SpqrNodeType::P) return other.type != SpqrNodeType::Q;
  return std::any_of(other.edges.begin(), other.edges.end(),
                     [&](const SkeletonEdge& f) { return !f.real && f.twin != node; });
}

}  // namespace detail::spqr

/// Vertex pairs whose removal disconnects the graph, read from the skeletons:
/// a pair separates iff, in some skeleton holding both, the rest of the
/// skeleton plus the hidden parts of virtual edges on exactly that pair form
/// two or more pieces.
inline std::vector<std::pair<VertexId, VertexId>> separation_pairs(const SpqrTree& tree) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (std::size_t x = 0; x < tree.nodes.size(); ++x) {
    const auto& node = tree.nodes[x];
    const auto& vs = node.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        auto a = vs[i], b = vs[j];
        std::unordered_map<VertexId, std::uint32_t> local;
        for (auto v : vs) {
          if (v != a && v != b) local.emplace(v, static_cast<std::uint32_t>(local.size()));
        }
        std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;
        std::uint32_t hidden = 0;
        for (auto& e : node.edges) {
          bool on_pair = std::minmax(e.u, e.v) == std::minmax(a, b);
          if (on_pair) {
            if (!e.real && detail::spqr::behind_has_internal(tree, x, e)) ++hidden;
            continue;
          }
          if (e.u == a || e.u == b || e.v == a || e.v == b) continue;
          ends.emplace_back(local[e.u], local[e.v]);
        }
        std::uint32_t pieces = 0;
        if (!local.empty()) {
          auto csr = detail::Csr::build(static_cast<std::uint32_t>(local.size()), ends);
          detail::component_labels(csr, pieces);
        }
        if (pieces + hidden >= 2) out.push_back(std::minmax(a, b));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace offcon
