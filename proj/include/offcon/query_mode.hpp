#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace offcon {

enum class CutFlavor { Edge, Vertex };

/// The four pair-connectivity questions: 2-/3-edge and bi-/tri-connectivity.
enum class QueryMode { TwoEdge, ThreeEdge, Biconnected, Triconnected };

inline constexpr std::array<QueryMode, 4> kAllModes{QueryMode::TwoEdge, QueryMode::ThreeEdge,
                                                    QueryMode::Biconnected, QueryMode::Triconnected};

constexpr CutFlavor flavor(QueryMode m) {
  return m == QueryMode::TwoEdge || m == QueryMode::ThreeEdge ? CutFlavor::Edge : CutFlavor::Vertex;
}

/// Connectivity level l: pairs are l-connected when no cut of size < l
/// separates them.
constexpr int level(QueryMode m) {
  return m == QueryMode::TwoEdge || m == QueryMode::Biconnected ? 2 : 3;
}

/// Short name used on the command line ("2E", "3E", "BC", "TC").
constexpr std::string_view short_name(QueryMode m) {
  switch (m) {
    case QueryMode::TwoEdge: return "2E";
    case QueryMode::ThreeEdge: return "3E";
    case QueryMode::Biconnected: return "BC";
    case QueryMode::Triconnected: return "TC";
  }
  return "?";
}

constexpr std::optional<QueryMode> mode_from_short_name(std::string_view s) {
  for (auto m : kAllModes) {
    if (short_name(m) == s) return m;
  }
  return std::nullopt;
}

}  // namespace offcon
