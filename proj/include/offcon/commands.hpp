#pragma once

// Command implementations behind the offcon tool. Each returns the process
// exit code and writes to the given streams, so tests can drive them
// directly.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "offcon/event_file.hpp"
#include "offcon/oracle.hpp"
#include "offcon/timeline.hpp"

namespace offcon {

enum ExitCode : int { kOk = 0, kMismatch = 1, kParseFailure = 2, kSemanticFailure = 3 };

struct GenOptions {
  std::uint64_t seed = 1;
  std::size_t t = 0;
  std::uint64_t n = 16;
  std::vector<QueryMode> modes{kAllModes.begin(), kAllModes.end()};
};

/// Random timeline: a quarter of the events are queries; updates insert a
/// random pair 60% of the time (always when no edge is live) and otherwise
/// delete a random live edge.
inline std::vector<RawEvent> generate(const GenOptions& opt) {
  if (opt.n < 2) throw std::invalid_argument("gen: n must be at least 2");
  if (opt.modes.empty()) throw std::invalid_argument("gen: no query modes");
  std::mt19937_64 rng(opt.seed);
  auto pick_pair = [&]() {
    VertexId u = rng() % opt.n;
    VertexId v = rng() % (opt.n - 1);
    if (v >= u) ++v;
    return std::pair{u, v};
  };
  std::vector<RawEvent> out;
  out.reserve(opt.t);
  std::vector<std::pair<VertexId, VertexId>> live;
  for (std::size_t i = 0; i < opt.t; ++i) {
    if (rng() % 4 == 0) {
      auto [u, v] = pick_pair();
      out.push_back({EventKind::Query, u, v, opt.modes[rng() % opt.modes.size()]});
    } else if (live.empty() || rng() % 10 < 6) {
      auto [u, v] = pick_pair();
      live.emplace_back(u, v);
      out.push_back({EventKind::Insert, u, v});
    } else {
      auto at = rng() % live.size();
      auto [u, v] = live[at];
      live[at] = live.back();
      live.pop_back();
      out.push_back({EventKind::Delete, u, v});
    }
  }
  return out;
}

inline std::string mode_list(const std::vector<QueryMode>& modes) {
  std::string s;
  for (auto m : modes) {
    if (!s.empty()) s += ',';
    s += short_name(m);
  }
  return s;
}

inline int cmd_gen(const GenOptions& opt, std::ostream& out) {
  auto events = generate(opt);
  out << "# offcon gen seed=" << opt.seed << " t=" << opt.t << " n=" << opt.n << " modes=" << mode_list(opt.modes)
      << '\n';
  write_events(out, events);
  return kOk;
}

namespace detail::cli {

/// Parses and matches a file, mapping failures to exit codes.
inline int load(std::istream& in, Timeline& timeline, std::ostream& err) {
  try {
    auto raw = parse_events(in);
    timeline = match_lifetimes(raw);
    return kOk;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kParseFailure;
  } catch (const EventError& e) {
    err << "semantic error at " << e.what() << '\n';
    return kSemanticFailure;
  }
}

inline const char* yes_no(bool b) { return b ? "YES" : "NO"; }

}  // namespace detail::cli

inline int cmd_answer(std::istream& in, std::ostream& out, std::ostream& err, const ReduceConfig& config = {}) {
  Timeline timeline;
  if (auto code = detail::cli::load(in, timeline, err)) return code;
  auto sheet = run(timeline, config);
  for (auto& [index, answer] : sheet) out << detail::cli::yes_no(answer) << '\n';
  return kOk;
}

inline int cmd_verify(std::istream& in, std::ostream& out, std::ostream& err, const ReduceConfig& config = {}) {
  Timeline timeline;
  if (auto code = detail::cli::load(in, timeline, err)) return code;
  auto offline = run(timeline, config);
  auto naive = naive_answer(timeline);
  for (auto& [index, expected] : naive) {
    auto it = offline.find(index);
    if (it == offline.end() || it->second != expected) {
      out << "MISMATCH at event " << index
          << ": offline=" << (it == offline.end() ? "missing" : detail::cli::yes_no(it->second))
          << " naive=" << detail::cli::yes_no(expected) << '\n';
      return kMismatch;
    }
  }
  out << "OK " << naive.size() << " queries\n";
  return kOk;
}

struct BenchOptions {
  QueryMode mode = QueryMode::TwoEdge;
  std::vector<std::size_t> ts;
  std::uint64_t seed = 1;
  std::uint64_t n = 1024;
  bool naive = true;
};

struct BenchRow {
  std::size_t t;
  QueryMode mode;
  bool offline;
  double millis;
  std::size_t max_reduced_size;
};

/// Times both engines on one generated workload per t. Throws if they
/// disagree.
inline std::vector<BenchRow> bench(const BenchOptions& opt) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (auto t : opt.ts) {
    auto events = generate({opt.seed, t, opt.n, {opt.mode}});
    auto timeline = match_lifetimes(events);
    RunStats stats;
    auto t0 = clock::now();
    auto offline = run(timeline, {}, &stats);
    auto t1 = clock::now();
    rows.push_back({t, opt.mode, true, std::chrono::duration<double, std::milli>(t1 - t0).count(),
                    stats.max_reduced_size});
    if (!opt.naive) continue;
    auto t2 = clock::now();
    auto naive = naive_answer(timeline);
    auto t3 = clock::now();
    if (naive != offline) throw std::runtime_error("bench: engines disagree at t=" + std::to_string(t));
    rows.push_back({t, opt.mode, false, std::chrono::duration<double, std::milli>(t3 - t2).count(), 0});
  }
  return rows;
}

inline int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  out << "t,mode,engine,millis,max_reduced_size\n";
  for (const auto& row : bench(opt)) {
    out << row.t << ',' << short_name(row.mode) << ',' << (row.offline ? "offline" : "naive") << ','
        << static_cast<long long>(row.millis + 0.5) << ',' << row.max_reduced_size << '\n';
  }
  return kOk;
}

}  // namespace offcon
