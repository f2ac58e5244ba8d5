#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opmine/graph.hpp"

namespace opmine {

// Orientation of the underlying arc relative to a tuple's (from, to) indices.
enum class ArcDirection : std::uint8_t { kForward = 0, kReverse = 1 };

// One DFS-code tuple. `from`/`to` are discovery indices; a tuple with
// from < to discovers a new vertex, otherwise it closes a back edge from the
// rightmost vertex.
struct DfsEdge {
  int from = 0;
  int to = 0;
  OpLabel from_label;
  ArcDirection dir = ArcDirection::kForward;
  OpLabel to_label;

  bool is_forward() const { return from < to; }
  friend bool operator==(const DfsEdge&, const DfsEdge&) = default;
};

// gSpan tuple order extended with the direction flag: growth position first,
// then (from_label, dir, to_label).
template <class Tuple>
std::strong_ordering compare_dfs_tuples(const Tuple& a, const Tuple& b) {
  const bool af = a.from < a.to;
  const bool bf = b.from < b.to;
  if (af && bf) {
    if (a.to != b.to) return a.to <=> b.to;
    if (a.from != b.from) return b.from <=> a.from;
  } else if (!af && !bf) {
    if (a.from != b.from) return a.from <=> b.from;
    if (a.to != b.to) return a.to <=> b.to;
  } else if (!af && bf) {
    return a.from < b.to ? std::strong_ordering::less : std::strong_ordering::greater;
  } else {
    return a.to <= b.from ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.from_label <=> b.from_label; c != 0) return c;
  if (auto c = a.dir <=> b.dir; c != 0) return c;
  return a.to_label <=> b.to_label;
}

// A connected pattern written as a DFS code. Single-vertex patterns have no
// tuples and carry their label in `root_label`.
struct DfsCode {
  std::vector<DfsEdge> edges;
  OpLabel root_label;

  int node_count() const;
  int edge_count() const { return static_cast<int>(edges.size()); }

  // Pattern graph with node i = discovery index i.
  LabeledDigraph to_graph() const;

  // "(0,1,A,>,B);(1,2,B,<,C)" or "(A)" for a lone vertex.
  std::string to_string() const;
  static DfsCode parse(std::string_view text);

  // Stable digest of the textual form.
  std::uint64_t digest() const;

  friend bool operator==(const DfsCode&, const DfsCode&) = default;
  friend std::strong_ordering operator<=>(const DfsCode& a, const DfsCode& b);
};

// Lexicographically smallest DFS code of a connected graph, computed over the
// mining view (data arcs, parallel arcs collapsed, self-loops ignored).
// Throws StructuralError for empty or disconnected input.
DfsCode min_dfs_code(const LabeledDigraph& g);

// True when `code` is the minimum code of the graph it describes.
bool is_min_dfs_code(const DfsCode& code);

std::string escape_label(std::string_view label);
std::string unescape_label(std::string_view text);

}  // namespace opmine
