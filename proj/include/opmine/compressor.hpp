#pragma once

#include <span>
#include <string>
#include <vector>

#include "opmine/graph.hpp"
#include "opmine/miner.hpp"

namespace opmine {

// "MODULE:" followed by the 16-digit hex digest of the pattern's code.
std::string module_label(const DfsCode& code);

struct Replacement {
  int pattern_index = 0;          // position in the biggest-first pattern list
  std::vector<NodeId> nodes;      // original node ids, sorted
  NodeId supernode = 0;           // id in the compressed graph
  int boundary_edges = 0;         // edges crossing the occurrence boundary
  int boundary_edges_kept = 0;    // after deduplication

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

struct CompressionResult {
  LabeledDigraph compressed;
  std::vector<Replacement> replacements;  // in selection order
  int original_nodes = 0;
  int reduced_nodes = 0;
  double reduction_ratio = 0.0;
};

// Greedy biggest-first replacement. Patterns are processed in pattern order
// (sorted internally); per pattern, occurrences are taken in ascending
// node-set order when disjoint from everything already replaced, and each
// collapses into one supernode. Boundary edges are merged per (other
// endpoint, direction, kind). Passes repeat until nothing changes. Patterns
// with fewer than two nodes are ignored since they cannot shrink a graph.
CompressionResult compress_graph(const LabeledDigraph& g, const std::vector<Pattern>& patterns);

struct DistributionSummary {
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Linear-interpolation quantiles (R type 7). Zeros for empty input.
DistributionSummary summarize(std::vector<double> values);

struct GraphReduction {
  std::string graph_id;
  int original_nodes = 0;
  int reduced_nodes = 0;
  double ratio = 0.0;

  friend bool operator==(const GraphReduction&, const GraphReduction&) = default;
};

struct ReductionStats {
  std::vector<GraphReduction> per_graph;  // input order
  DistributionSummary summary;
  std::vector<std::string> zero_ratio_graphs;
};

ReductionStats corpus_reduction_stats(std::span<const LabeledDigraph> corpus, const std::vector<Pattern>& patterns);
ReductionStats corpus_reduction_stats_serial(std::span<const LabeledDigraph> corpus,
                                             const std::vector<Pattern>& patterns);

}  // namespace opmine
