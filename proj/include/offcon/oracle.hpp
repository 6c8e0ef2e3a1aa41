#pragma once

// Brute-force references. naive_answer replays the timeline on an explicit
// graph; cut_catalog lists every separation of an active set by a cut below
// the mode's level, which is how reducer outputs are judged.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "offcon/multigraph.hpp"
#include "offcon/query_mode.hpp"
#include "offcon/reducers.hpp"
#include "offcon/static_query.hpp"
#include "offcon/timeline.hpp"

namespace offcon {

/// Replays the timeline edge by edge and answers each query on the whole
/// current graph.
inline AnswerSheet naive_answer(const Timeline& timeline) {
  AnswerSheet sheet;
  std::unordered_map<VertexId, std::uint32_t> index;
  auto dense = [&](VertexId v) {
    return index.try_emplace(v, static_cast<std::uint32_t>(index.size())).first->second;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::size_t> owner;                   // instance at each slot
  std::unordered_map<std::size_t, std::size_t> slot;  // instance -> slot
  for (const auto& ev : timeline.events) {
    switch (ev.kind) {
      case EventKind::Insert:
        slot[ev.edge] = edges.size();
        edges.emplace_back(dense(ev.u), dense(ev.v));
        owner.push_back(ev.edge);
        break;
      case EventKind::Delete: {
        auto at = slot.at(ev.edge);
        slot.erase(ev.edge);
        if (at + 1 != edges.size()) {
          edges[at] = edges.back();
          owner[at] = owner.back();
          slot[owner[at]] = at;
        }
        edges.pop_back();
        owner.pop_back();
        break;
      }
      case EventKind::Query: {
        auto s = dense(ev.u), t = dense(ev.v);
        auto csr = detail::Csr::build(static_cast<std::uint32_t>(index.size()), edges);
        sheet[ev.index] = detail::decomposed_query(csr, ev.mode, s, t);
        break;
      }
    }
  }
  return sheet;
}

inline AnswerSheet naive_answer(std::span<const RawEvent> events) { return naive_answer(match_lifetimes(events)); }

/// Separation of an active set: which actives end up on each side. The side
/// holding the smallest active comes first.
struct CutSignature {
  std::vector<VertexId> s;
  std::vector<VertexId> t;

  friend auto operator<=>(const CutSignature&, const CutSignature&) = default;
};

/// Each realized signature with the smallest cut realizing it.
struct CutCatalog {
  QueryMode mode = QueryMode::TwoEdge;
  std::map<CutSignature, std::size_t> entries;
};

inline constexpr std::size_t kCatalogMaxVertices = 16;
inline constexpr std::size_t kCatalogMaxEdges = 96;

namespace detail::oracle {

inline CutSignature canonical(std::vector<VertexId> s, std::vector<VertexId> t) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.front() < s.front()) std::swap(s, t);
  return {std::move(s), std::move(t)};
}

/// Records every way of splitting the active-bearing components left after
/// removing a cut of size `size`.
inline void record(CutCatalog& cat, const std::vector<std::vector<VertexId>>& groups, std::size_t size) {
  if (groups.size() < 2) return;
  if (groups.size() > 20) throw std::invalid_argument("cut_catalog: too many active components");
  const std::uint64_t all = (std::uint64_t{1} << groups.size()) - 1;
  // fixing group 0 on the s side enumerates each unordered split once
  for (std::uint64_t mask = 0; mask < all; mask += 2) {
    std::vector<VertexId> s, t;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      auto& side = (mask >> i) & 1 ? t : s;
      side.insert(side.end(), groups[i].begin(), groups[i].end());
    }
    if (t.empty()) continue;
    auto sig = canonical(std::move(s), std::move(t));
    auto [it, inserted] = cat.entries.try_emplace(std::move(sig), size);
    if (!inserted) it->second = std::min(it->second, size);
  }
}

inline std::vector<std::vector<VertexId>> active_groups(const Csr& csr, const MultiGraph& g,
                                                        const std::vector<char>& is_active,
                                                        const std::vector<char>* skip_edge,
                                                        const std::vector<char>* skip_vertex) {
  std::uint32_t count = 0;
  auto label = component_labels(csr, count, skip_edge, skip_vertex);
  std::vector<std::vector<VertexId>> groups(count);
  for (std::uint32_t x = 0; x < csr.n(); ++x) {
    if (is_active[x] && label[x] != kNone) groups[label[x]].push_back(g.vertices()[x]);
  }
  std::erase_if(groups, [](const auto& grp) { return grp.empty(); });
  return groups;
}

template <class Visit>
void subsets_below(std::uint32_t universe, int level, Visit visit) {
  std::vector<std::uint32_t> pick;
  visit(pick);
  for (std::uint32_t a = 0; a < universe; ++a) {
    pick = {a};
    visit(pick);
    if (level < 3) continue;
    for (auto b = a + 1; b < universe; ++b) {
      pick = {a, b};
      visit(pick);
    }
  }
}

}  // namespace detail::oracle

/// Every separation of `active` by an edge set (edge modes) or vertex set
/// (vertex modes) of size below the mode's level, with its minimum size.
/// Vertex cuts may contain active vertices. Actives absent from `g` count as
/// isolated vertices.
inline CutCatalog cut_catalog(const MultiGraph& g0, std::span<const VertexId> active, QueryMode mode) {
  MultiGraph g = g0;
  for (auto a : active) g.add_vertex(a);
  if (g.vertex_count() > kCatalogMaxVertices || g.edge_count() > kCatalogMaxEdges) {
    throw std::invalid_argument("cut_catalog: instance too large for enumeration");
  }
  CutCatalog cat;
  cat.mode = mode;
  auto csr = detail::Csr::of(g);
  std::vector<char> is_active(csr.n(), 0);
  for (auto a : active) is_active[g.index_of(a)] = 1;
  const int l = level(mode);
  if (flavor(mode) == CutFlavor::Edge) {
    std::vector<char> cut(csr.m(), 0);
    detail::oracle::subsets_below(csr.m(), l, [&](const std::vector<std::uint32_t>& pick) {
      for (auto e : pick) cut[e] = 1;
      detail::oracle::record(cat, detail::oracle::active_groups(csr, g, is_active, &cut, nullptr), pick.size());
      for (auto e : pick) cut[e] = 0;
    });
  } else {
    std::vector<char> cut(csr.n(), 0);
    detail::oracle::subsets_below(csr.n(), l, [&](const std::vector<std::uint32_t>& pick) {
      for (auto x : pick) cut[x] = 1;
      detail::oracle::record(cat, detail::oracle::active_groups(csr, g, is_active, nullptr, &cut), pick.size());
      for (auto x : pick) cut[x] = 0;
    });
  }
  return cat;
}

struct EquivalenceResult {
  bool ok = true;
  std::string witness;

  explicit operator bool() const { return ok; }
};

namespace detail::oracle {

inline std::string describe(const CutSignature& sig) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < sig.s.size(); ++i) out << (i ? "," : "") << sig.s[i];
  out << "} | {";
  for (std::size_t i = 0; i < sig.t.size(); ++i) out << (i ? "," : "") << sig.t[i];
  out << "}";
  return out.str();
}

}  // namespace detail::oracle

/// Compares the catalogs of `g` and `h.graph` through `h.f`. Edge modes need
/// the same separations at the same minimum sizes; vertex modes only need
/// the same separations.
inline EquivalenceResult check_equivalence(const MultiGraph& g, const ReducedGraph& h, std::span<const VertexId> active,
                                           QueryMode mode) {
  using detail::oracle::describe;
  EquivalenceResult res;
  auto fail = [&](std::string why) {
    res.ok = false;
    res.witness = std::move(why);
    return res;
  };
  std::vector<VertexId> image;
  for (auto a : active) {
    auto it = h.f.find(a);
    if (it == h.f.end()) return fail("active vertex " + std::to_string(a) + " has no image");
    if (!h.graph.has_vertex(it->second)) return fail("image of " + std::to_string(a) + " is not in the graph");
    image.push_back(it->second);
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());

  const bool sizes = flavor(mode) == CutFlavor::Edge;
  auto source = cut_catalog(g, active, mode);
  auto target = cut_catalog(h.graph, image, mode);

  std::map<CutSignature, std::size_t> mapped;
  for (const auto& [sig, size] : source.entries) {
    std::set<VertexId> fs, ft, fc;
    for (auto x : sig.s) fs.insert(h.f.at(x));
    for (auto x : sig.t) ft.insert(h.f.at(x));
    std::set<VertexId> sides(sig.s.begin(), sig.s.end());
    sides.insert(sig.t.begin(), sig.t.end());
    for (auto a : active) {
      if (!sides.contains(a)) fc.insert(h.f.at(a));
    }
    auto meets = [](const std::set<VertexId>& a, const std::set<VertexId>& b) {
      return std::any_of(a.begin(), a.end(), [&](VertexId x) { return b.contains(x); });
    };
    if (meets(fs, ft) || meets(fs, fc) || meets(ft, fc)) {
      return fail("cut " + describe(sig) + " of size " + std::to_string(size) + " splits merged actives");
    }
    auto key = detail::oracle::canonical({fs.begin(), fs.end()}, {ft.begin(), ft.end()});
    auto [it, inserted] = mapped.try_emplace(key, size);
    if (!inserted) it->second = std::min(it->second, size);
  }
  for (const auto& [sig, size] : mapped) {
    auto it = target.entries.find(sig);
    if (it == target.entries.end()) {
      return fail("lost separation " + describe(sig) + " of size " + std::to_string(size));
    }
    if (sizes && it->second != size) {
      return fail("separation " + describe(sig) + " has size " + std::to_string(size) + " but " +
                  std::to_string(it->second) + " after reduction");
    }
  }
  for (const auto& [sig, size] : target.entries) {
    if (!mapped.contains(sig)) {
      return fail("new separation " + describe(sig) + " of size " + std::to_string(size));
    }
  }
  return res;
}

}  // namespace offcon
