#pragma once

#include <span>
#include <vector>

#include "opmine/graph.hpp"
#include "opmine/miner.hpp"

namespace opmine {

// Number of graphs in which some occurrence node-set of p is not contained in
// an occurrence node-set (same graph) of any strict superpattern of p taken
// from `frequent`. Equals the support when p has no superpattern there.
int unique_count(const Pattern& p, const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus);

// Keeps patterns whose unique count reaches cfg.min_support(corpus size) and
// fills in their unique_count. Output sorted in pattern order.
std::vector<Pattern> reduce_frequent_set(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus,
                                         const MiningConfig& cfg);
std::vector<Pattern> reduce_frequent_set_serial(const std::vector<Pattern>& frequent,
                                                std::span<const LabeledDigraph> corpus, const MiningConfig& cfg);

// Unique counts for every pattern (index-aligned with `frequent`).
std::vector<int> unique_counts(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus);
std::vector<int> unique_counts_serial(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus);

}  // namespace opmine
