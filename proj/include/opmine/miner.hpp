#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "opmine/dfs_code.hpp"
#include "opmine/graph.hpp"

namespace opmine {

struct MiningConfig {
  double tau = 0.3;  // minimum support as a fraction of the corpus, in (0, 1]
  int min_nodes = 3;
  bool closed_only = true;
  std::optional<int> max_pattern_edges;
  std::uint64_t seed = 0;

  // Throws ConfigError on out-of-range fields.
  void validate() const;
  // ceil(tau * corpus_size), never below 1.
  int min_support(int corpus_size) const;
};

struct Pattern {
  DfsCode code;  // canonical (minimum) code
  int node_count = 0;
  int edge_count = 0;
  int support = 0;
  std::optional<int> unique_count;

  LabeledDigraph graph() const { return code.to_graph(); }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

Pattern make_pattern(DfsCode code, int support);

// Output order used everywhere: node_count descending, then canonical code.
bool pattern_order(const Pattern& a, const Pattern& b);
void sort_patterns(std::vector<Pattern>& patterns);

// Number of graphs containing at least one embedding of the pattern.
int support(const Pattern& p, std::span<const LabeledDigraph> corpus);
int support_serial(const Pattern& p, std::span<const LabeledDigraph> corpus);

// p is a strict subpattern of q: p embeds into q and the two differ.
bool is_strict_subpattern(const Pattern& p, const Pattern& q);

// gSpan over the directed mining view. Returns every connected pattern with
// at least cfg.min_nodes nodes and support >= min_support, sorted with
// pattern_order. Root branches of the search tree run under OpenMP; the
// result does not depend on the schedule. Closedness is not applied here.
std::vector<Pattern> mine_frequent(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg);
// Same search on a single thread. Reference for the parallel driver.
std::vector<Pattern> mine_frequent_serial(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg);

// Drops every pattern that has a strict superpattern of equal support in
// the same set. Only superpatterns with one more edge are examined, which is
// exact for sets closed under connected sub-patterns (any mine_frequent
// output); the naive all-pairs version is closed_filter_exhaustive.
std::vector<Pattern> closed_filter(const std::vector<Pattern>& patterns);
std::vector<Pattern> closed_filter_exhaustive(const std::vector<Pattern>& patterns);

// mine_frequent followed by closed_filter when cfg.closed_only is set.
std::vector<Pattern> mine(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg);

}  // namespace opmine
