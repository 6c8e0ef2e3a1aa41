#pragma once

// Text event format, one event per line:
//
//   I <u> <v>      insert an edge
//   D <u> <v>      delete the oldest live copy of edge uv
//   Q2E|Q3E|QBC|QTC <u> <v>
//
// Vertices are unsigned 64-bit integers. `#` starts a comment; blank lines
// are skipped.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "offcon/query_mode.hpp"
#include "offcon/timeline.hpp"

namespace offcon {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("parse error at line " + std::to_string(line) + ": " + reason), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail::events {

inline std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    auto j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline VertexId vertex(std::string_view tok, std::size_t line) {
  VertexId v = 0;
  auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || end != tok.data() + tok.size()) {
    throw ParseError(line, "bad vertex '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail::events

inline RawEvent parse_event_line(std::string_view text, std::size_t line) {
  auto toks = detail::events::split(text);
  if (toks.size() != 3) throw ParseError(line, "expected 3 fields, got " + std::to_string(toks.size()));
  RawEvent ev{EventKind::Insert, 0, 0};
  auto op = toks[0];
  if (op == "I") {
    ev.kind = EventKind::Insert;
  } else if (op == "D") {
    ev.kind = EventKind::Delete;
  } else if (op.size() > 1 && op[0] == 'Q') {
    auto mode = mode_from_short_name(op.substr(1));
    if (!mode) throw ParseError(line, "unknown query kind '" + std::string(op) + "'");
    ev.kind = EventKind::Query;
    ev.mode = *mode;
  } else {
    throw ParseError(line, "unknown event '" + std::string(op) + "'");
  }
  ev.u = detail::events::vertex(toks[1], line);
  ev.v = detail::events::vertex(toks[2], line);
  if (ev.kind == EventKind::Query && ev.u == ev.v) throw ParseError(line, "query endpoints must differ");
  return ev;
}

inline std::vector<RawEvent> parse_events(std::istream& in) {
  std::vector<RawEvent> out;
  std::string buf;
  std::size_t line = 0;
  while (std::getline(in, buf)) {
    ++line;
    std::string_view text(buf);
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    if (detail::events::split(text).empty()) continue;
    out.push_back(parse_event_line(text, line));
  }
  return out;
}

inline void write_event(std::ostream& out, const RawEvent& ev) {
  switch (ev.kind) {
    case EventKind::Insert: out << 'I'; break;
    case EventKind::Delete: out << 'D'; break;
    case EventKind::Query: out << 'Q' << short_name(ev.mode); break;
  }
  out << ' ' << ev.u << ' ' << ev.v << '\n';
}

inline void write_events(std::ostream& out, std::span<const RawEvent> events) {
  for (const auto& ev : events) write_event(out, ev);
}

}  // namespace offcon
