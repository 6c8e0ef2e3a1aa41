#pragma once

// Offline driver: matches insertions to deletions, then answers all queries
// of one mode by halving the event sequence. Each half sees the edges that
// live across it as a fixed base graph, which is shrunk by the mode's reducer
// to a size proportional to the half's event count before recursing.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "offcon/multigraph.hpp"
#include "offcon/query_mode.hpp"
#include "offcon/reducers.hpp"
#include "offcon/static_query.hpp"

namespace offcon {

enum class EventKind { Insert, Delete, Query };

/// One line of input: an update or a query, named by its endpoints.
struct RawEvent {
  EventKind kind;
  VertexId u;
  VertexId v;
  QueryMode mode = QueryMode::TwoEdge;  // queries only
};

inline constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

struct Event {
  std::size_t index;  // 1-based position on the timeline
  EventKind kind;
  VertexId u;
  VertexId v;
  QueryMode mode = QueryMode::TwoEdge;
  std::size_t edge = kNoEdge;  // instance id for updates
};

/// One occurrence of an edge, alive from its insertion i_e until its deletion
/// d_e (t + 1 when never deleted).
struct EdgeInstance {
  std::size_t edge_id;
  VertexId u;
  VertexId v;
  std::size_t i_e;
  std::size_t d_e;
};

class EventError : public std::runtime_error {
 public:
  EventError(std::size_t index, const std::string& what)
      : std::runtime_error("event " + std::to_string(index) + ": " + what), index_(index) {}
  [[nodiscard]] std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct Timeline {
  std::vector<EdgeInstance> instances;
  std::vector<Event> events;
  std::size_t t = 0;
};

/// Deletions go to the oldest open copy with the same endpoints.
inline Timeline match_lifetimes(std::span<const RawEvent> raw) {
  Timeline out;
  out.t = raw.size();
  out.events.reserve(raw.size());
  std::map<std::pair<VertexId, VertexId>, std::deque<std::size_t>> open;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& r = raw[i];
    const auto index = i + 1;
    Event ev{index, r.kind, r.u, r.v, r.mode, kNoEdge};
    switch (r.kind) {
      case EventKind::Insert: {
        if (r.u == r.v) throw EventError(index, "insert creates a self-loop on vertex " + std::to_string(r.u));
        ev.edge = out.instances.size();
        out.instances.push_back({ev.edge, r.u, r.v, index, raw.size() + 1});
        open[std::minmax(r.u, r.v)].push_back(ev.edge);
        break;
      }
      case EventKind::Delete: {
        auto it = open.find(std::minmax(r.u, r.v));
        if (it == open.end() || it->second.empty()) {
          throw EventError(index, "delete of absent edge " + std::to_string(r.u) + " " + std::to_string(r.v));
        }
        ev.edge = it->second.front();
        it->second.pop_front();
        out.instances[ev.edge].d_e = index;
        break;
      }
      case EventKind::Query:
        if (r.u == r.v) throw EventError(index, "query needs two distinct vertices");
        break;
    }
    out.events.push_back(ev);
  }
  return out;
}

enum class EdgeClass { Permanent, PresentAtStart, InInterval, Excluded };

inline EdgeClass classify(const EdgeInstance& e, std::size_t l, std::size_t r) {
  if (e.i_e < l && r < e.d_e) return EdgeClass::Permanent;
  if (e.i_e < l && l <= e.d_e && e.d_e <= r) return EdgeClass::PresentAtStart;
  if (l <= e.i_e && e.i_e <= r) return EdgeClass::InInterval;
  return EdgeClass::Excluded;
}

struct EdgeClasses {
  std::vector<std::size_t> permanent;
  std::vector<std::size_t> present_at_start;
  std::vector<std::size_t> in_interval;
  std::vector<std::size_t> excluded;
};

inline EdgeClasses classify_edges(std::span<const EdgeInstance> instances, std::size_t l, std::size_t r) {
  if (l > r) throw std::invalid_argument("classify_edges: empty interval");
  EdgeClasses out;
  for (const auto& e : instances) {
    switch (classify(e, l, r)) {
      case EdgeClass::Permanent: out.permanent.push_back(e.edge_id); break;
      case EdgeClass::PresentAtStart: out.present_at_start.push_back(e.edge_id); break;
      case EdgeClass::InInterval: out.in_interval.push_back(e.edge_id); break;
      case EdgeClass::Excluded: out.excluded.push_back(e.edge_id); break;
    }
  }
  return out;
}

struct PresentEdge {
  std::size_t edge_id;
  VertexId u;
  VertexId v;
};

/// Everything one recursion node needs. Vertex names in `present_at_start`
/// and `events` live in the namespace of `base`.
struct IntervalContext {
  std::size_t first = 1;
  std::size_t last = 0;
  MultiGraph base;
  std::vector<PresentEdge> present_at_start;
  std::vector<Event> events;
  std::span<const EdgeInstance> lifetimes;
};

inline std::vector<VertexId> active_vertices(const IntervalContext& ctx) {
  std::vector<VertexId> out;
  out.reserve(ctx.events.size() * 2);
  for (const auto& ev : ctx.events) out.push_back(ev.u), out.push_back(ev.v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Query event index -> answer.
using AnswerSheet = std::map<std::size_t, bool>;

using Reducer = std::function<ReducedGraph(QueryMode, const MultiGraph&, std::span<const VertexId>,
                                           const ReduceConfig&)>;

inline ReducedGraph default_reducer(QueryMode mode, const MultiGraph& g, std::span<const VertexId> active,
                                    const ReduceConfig& config) {
  return reduce(mode, g, active, config);
}

struct RunStats {
  std::size_t max_reduced_size = 0;
  std::size_t reduce_calls = 0;
  std::size_t base_cases = 0;
  std::size_t max_depth = 0;
};

namespace detail::timeline {

class Solver {
 public:
  Solver(QueryMode mode, const Reducer& reducer, const ReduceConfig& config, std::span<const EdgeInstance> life,
         AnswerSheet& sheet, RunStats& stats)
      : mode_(mode), reducer_(reducer), config_(config), life_(life), sheet_(sheet), stats_(stats) {}

  void solve(std::size_t l, std::size_t r, MultiGraph base, std::vector<PresentEdge> present, std::vector<Event> events,
             std::size_t depth) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (std::none_of(events.begin(), events.end(), [](const Event& e) { return e.kind == EventKind::Query; })) return;
    if (events.size() <= config_.k0) {
      base_case(base, present, events);
      return;
    }

    // every event endpoint is a vertex of base (see answer_queries), so ids
    // index plain vectors
    const auto n = base.vertex_count();
    std::vector<VertexId> active;
    active.reserve(events.size() * 2);
    std::vector<char> seen(n, 0);
    for (const auto& ev : events) {
      for (auto x : {ev.u, ev.v}) {
        if (!seen[x]) seen[x] = 1, active.push_back(x);
      }
    }
    auto h = reducer_(mode_, base, active, config_);
    compact(h);
    ++stats_.reduce_calls;
    stats_.max_reduced_size = std::max(stats_.max_reduced_size, h.size());
    std::vector<VertexId> f(n, 0);
    for (auto [from, to] : h.f) f[from] = to;

    // rename into the reduced graph; updates that collapse to a loop vanish
    std::vector<PresentEdge> mapped_present;
    mapped_present.reserve(present.size());
    for (auto p : present) {
      p.u = f[p.u];
      p.v = f[p.v];
      if (p.u != p.v) mapped_present.push_back(p);
    }
    std::vector<Event> mapped;
    mapped.reserve(events.size());
    for (auto ev : events) {
      ev.u = f[ev.u];
      ev.v = f[ev.v];
      if (ev.kind != EventKind::Query && ev.u == ev.v) continue;
      mapped.push_back(ev);
    }
    present.clear();
    events.clear();
    if (mapped.size() <= config_.k0) {
      base_case(h.graph, mapped_present, mapped);
      return;
    }

    const auto k = mapped.size();
    const auto half = (k + 1) / 2;
    const auto mid = mapped[half - 1].index;
    std::vector<Event> left(mapped.begin(), mapped.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<Event> right(mapped.begin() + static_cast<std::ptrdiff_t>(half), mapped.end());

    MultiGraph left_base = h.graph;
    MultiGraph right_base = std::move(h.graph);
    std::vector<PresentEdge> left_present, right_present;
    for (const auto& p : mapped_present) {
      const auto d = life_[p.edge_id].d_e;
      if (d <= mid) {
        left_present.push_back(p);
      } else {
        left_base.add_edge(p.u, p.v);
        if (d <= r) {
          right_present.push_back(p);
        } else {
          right_base.add_edge(p.u, p.v);
        }
      }
    }
    for (const auto& ev : left) {
      if (ev.kind != EventKind::Insert) continue;
      const auto d = life_[ev.edge].d_e;
      if (d > r) {
        right_base.add_edge(ev.u, ev.v);
      } else if (d > mid) {
        right_present.push_back({ev.edge, ev.u, ev.v});
      }
    }
    mapped.clear();
    mapped.shrink_to_fit();
    solve(l, mid, std::move(left_base), std::move(left_present), std::move(left), depth + 1);
    solve(mid + 1, r, std::move(right_base), std::move(right_present), std::move(right), depth + 1);
  }

 private:
  // Renames the reduced graph to 0..n-1 when a reducer returns other names.
  static void compact(ReducedGraph& h) {
    auto vs = h.graph.vertices();
    bool dense = true;
    for (std::size_t i = 0; i < vs.size() && dense; ++i) dense = vs[i] == i;
    if (dense) return;
    std::unordered_map<VertexId, VertexId> to;
    for (auto v : vs) to.emplace(v, to.size());
    MultiGraph g;
    for (VertexId v = 0; v < to.size(); ++v) g.add_vertex(v);
    for (const auto& e : h.graph.edges()) g.add_edge(e.key, to.at(e.u), to.at(e.v));
    VertexMap f;
    for (auto [from, image] : h.f) f.insert(from, to.at(image));
    f.seal();
    h.graph = std::move(g);
    h.f = std::move(f);
  }

  void base_case(const MultiGraph& base, const std::vector<PresentEdge>& present, const std::vector<Event>& events) {
    ++stats_.base_cases;
    std::map<std::size_t, std::pair<VertexId, VertexId>> live;
    for (const auto& p : present) live[p.edge_id] = {p.u, p.v};
    for (const auto& ev : events) {
      switch (ev.kind) {
        case EventKind::Insert: live[ev.edge] = {ev.u, ev.v}; break;
        case EventKind::Delete: live.erase(ev.edge); break;
        case EventKind::Query: {
          if (ev.u == ev.v) {
            sheet_[ev.index] = true;
            break;
          }
          MultiGraph g = base;
          for (auto& [id, uv] : live) {
            if (uv.first != uv.second) g.add_edge(uv.first, uv.second);
          }
          g.add_vertex(ev.u);
          g.add_vertex(ev.v);
          sheet_[ev.index] = pair_query(g, {mode_, ev.u, ev.v});
          break;
        }
      }
    }
  }

  QueryMode mode_;
  const Reducer& reducer_;
  const ReduceConfig& config_;
  std::span<const EdgeInstance> life_;
  AnswerSheet& sheet_;
  RunStats& stats_;
};

}  // namespace detail::timeline

/// Answers the queries in `ctx.events` (all of mode `mode`).
inline AnswerSheet answer_queries(const IntervalContext& ctx, QueryMode mode, const Reducer& reducer = default_reducer,
                                  const ReduceConfig& config = {}, RunStats* stats = nullptr) {
  for (const auto& ev : ctx.events) {
    if (ev.kind == EventKind::Query && ev.mode != mode) {
      throw std::invalid_argument("answer_queries: query of another mode at event " + std::to_string(ev.index));
    }
  }
  // rename to 0..N-1 over base, present edges and events
  std::unordered_map<VertexId, VertexId> dense;
  auto id = [&](VertexId v) { return dense.try_emplace(v, dense.size()).first->second; };
  for (auto v : ctx.base.vertices()) id(v);
  for (const auto& p : ctx.present_at_start) id(p.u), id(p.v);
  for (const auto& ev : ctx.events) id(ev.u), id(ev.v);
  MultiGraph base;
  base.reserve(dense.size(), ctx.base.edge_count());
  for (VertexId v = 0; v < dense.size(); ++v) base.add_vertex(v);
  for (const auto& e : ctx.base.edges()) base.add_edge(e.key, dense.at(e.u), dense.at(e.v));
  auto present = ctx.present_at_start;
  for (auto& p : present) p.u = dense.at(p.u), p.v = dense.at(p.v);
  auto events = ctx.events;
  for (auto& ev : events) ev.u = dense.at(ev.u), ev.v = dense.at(ev.v);

  AnswerSheet sheet;
  RunStats local;
  detail::timeline::Solver solver(mode, reducer, config, ctx.lifetimes, sheet, stats ? *stats : local);
  solver.solve(ctx.first, ctx.last, std::move(base), std::move(present), std::move(events), 0);
  return sheet;
}

/// Answers every query of a timeline, one pass per query mode present.
inline AnswerSheet run(const Timeline& timeline, const ReduceConfig& config = {}, RunStats* stats = nullptr,
                       const Reducer& reducer = default_reducer) {
  AnswerSheet sheet;
  for (auto mode : kAllModes) {
    IntervalContext ctx;
    ctx.first = 1;
    ctx.last = timeline.t;
    ctx.lifetimes = timeline.instances;
    bool any = false;
    for (const auto& ev : timeline.events) {
      if (ev.kind == EventKind::Query) {
        if (ev.mode != mode) continue;
        any = true;
      }
      ctx.events.push_back(ev);
    }
    if (!any) continue;
    auto part = answer_queries(ctx, mode, reducer, config, stats);
    sheet.merge(part);
  }
  return sheet;
}

inline AnswerSheet run(std::span<const RawEvent> events, const ReduceConfig& config = {}, RunStats* stats = nullptr) {
  return run(match_lifetimes(events), config, stats);
}

}  // namespace offcon
