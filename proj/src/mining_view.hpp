#pragma once

// Integer-labeled graphs and DFS-code machinery shared by the miner, the
// canonicalizer and the brute-force oracle. Labels are interned so that
// integer order equals string order.

#include <map>
#include <string>
#include <vector>

#include "opmine/dfs_code.hpp"
#include "opmine/graph.hpp"

namespace opmine::detail {

struct Tuple {
  int from = 0;
  int to = 0;
  int from_label = 0;
  int dir = 0;
  int to_label = 0;

  friend bool operator==(const Tuple&, const Tuple&) = default;
};

inline bool tuple_less(const Tuple& a, const Tuple& b) { return compare_dfs_tuples(a, b) < 0; }

struct TupleLess {
  bool operator()(const Tuple& a, const Tuple& b) const { return tuple_less(a, b); }
};

using Code = std::vector<Tuple>;

// Sorted label table; id order matches string order.
class LabelTable {
 public:
  LabelTable() = default;
  explicit LabelTable(std::vector<std::string> labels);

  int id(const std::string& label) const;  // -1 when absent
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

struct Adjacent {
  int edge = 0;
  int other = 0;
  int dir = 0;  // 0: arc vertex->other, 1: arc other->vertex
};

// Undirected multigraph view of the collapsed data arcs. Each arc u->v
// (u != v) is one edge; u->v and v->u are two distinct edges.
struct MiningGraph {
  std::vector<int> labels;
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::vector<Adjacent>> adj;

  int node_count() const { return static_cast<int>(labels.size()); }
  int edge_count() const { return static_cast<int>(arcs.size()); }
};

MiningGraph make_mining_graph(const LabeledDigraph& g, const LabelTable& table);
MiningGraph graph_from_code(const Code& code, int root_label);

// Discovery indices on the path from the root to the rightmost vertex.
std::vector<int> rightmost_path(const Code& code);
int code_node_count(const Code& code);

// Greedy minimum-code construction over all projections of the current
// prefix. `is_min` rebuilds the graph of `code` and stops at the first
// tuple where the minimum diverges from it.
Code min_code(const MiningGraph& g);
bool is_min(const Code& code, int root_label);

DfsCode to_public(const Code& code, int root_label, const LabelTable& table);
Code from_public(const DfsCode& code, const LabelTable& table);

}  // namespace opmine::detail
