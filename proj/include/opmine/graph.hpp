#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opmine {

// Operation type carried by a node ("Conv2D", "Relu", ...). The only node
// attribute consulted by equality, hashing, mining and dedup.
class OpLabel {
 public:
  OpLabel() = default;
  explicit OpLabel(std::string value);

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend auto operator<=>(const OpLabel&, const OpLabel&) = default;

 private:
  std::string value_;
};

using NodeId = int;

enum class EdgeKind : std::uint8_t { kData, kControl };

struct GraphNode {
  NodeId id = 0;
  OpLabel label;
  std::string name;  // original scoped name; never used for matching

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  NodeId src = 0;
  NodeId dst = 0;
  EdgeKind kind = EdgeKind::kData;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Directed multigraph of labeled operation nodes. Node ids are dense
// (0..n-1, assigned in insertion order) and every edge endpoint is valid.
class LabeledDigraph {
 public:
  LabeledDigraph() = default;
  explicit LabeledDigraph(std::string graph_id) : graph_id_(std::move(graph_id)) {}

  NodeId add_node(OpLabel label, std::string name = {});
  // Throws ReferenceError when an endpoint is out of range.
  void add_edge(NodeId src, NodeId dst, EdgeKind kind = EdgeKind::kData);

  const std::string& graph_id() const { return graph_id_; }
  void set_graph_id(std::string id) { graph_id_ = std::move(id); }

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const GraphNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const OpLabel& label(NodeId id) const { return node(id).label; }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int data_edge_count() const;
  bool empty() const { return nodes_.empty(); }

  friend bool operator==(const LabeledDigraph&, const LabeledDigraph&) = default;

 private:
  std::string graph_id_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
};

// Data-edge adjacency with parallel arcs collapsed. This is the view used by
// subgraph matching and mining.
class ArcView {
 public:
  explicit ArcView(const LabeledDigraph& g);

  int node_count() const { return static_cast<int>(out_.size()); }
  const std::vector<NodeId>& out(NodeId u) const { return out_[static_cast<std::size_t>(u)]; }
  const std::vector<NodeId>& in(NodeId u) const { return in_[static_cast<std::size_t>(u)]; }
  bool has_arc(NodeId u, NodeId v) const;

 private:
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
};

// Pattern-node -> graph-node mapping; injective, label and arc preserving.
struct Embedding {
  std::vector<NodeId> mapping;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

// Distinct occurrences of a pattern in a graph, keyed by the sorted image
// node-set. Automorphic mappings onto the same node-set collapse into one
// entry; the witness is the first mapping found for that set.
using OccurrenceMap = std::map<std::vector<NodeId>, Embedding>;

// Weisfeiler-Lehman digest over data edges (multiplicity respected).
// Isomorphic graphs always collide; the converse is not guaranteed.
std::uint64_t wl_hash(const LabeledDigraph& g, int rounds = 3);

// Exact label-preserving isomorphism over data-edge multisets.
bool is_isomorphic(const LabeledDigraph& g, const LabeledDigraph& h);

// Every distinct occurrence of `pattern` in `graph` (non-induced semantics).
// Throws StructuralError when the pattern is empty or not weakly connected.
OccurrenceMap enumerate_embeddings(const LabeledDigraph& pattern, const LabeledDigraph& graph);

// Stops at the first embedding.
bool contains_subgraph(const LabeledDigraph& pattern, const LabeledDigraph& graph);

// Weakly connected over data edges. The empty graph is not connected.
bool is_weakly_connected(const LabeledDigraph& g);

// Stable 64-bit FNV-1a, used wherever digests must be reproducible.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

}  // namespace opmine
