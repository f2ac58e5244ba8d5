#pragma once

// Exhaustive reference implementations used only by tests. None of them
// share code with the library paths they check.

#include <map>
#include <vector>

#include "opmine/dfs_code.hpp"
#include "opmine/graph.hpp"

namespace opmine::testing {

// Tries every node permutation; data-arc multiplicities and labels must match.
bool brute_force_isomorphic(const LabeledDigraph& g, const LabeledDigraph& h);

// Every injective label/arc-preserving mapping of `pattern` into `graph`,
// grouped by sorted image node-set; value = number of mappings.
std::map<std::vector<NodeId>, int> brute_force_occurrences(const LabeledDigraph& pattern,
                                                           const LabeledDigraph& graph);

// Minimum over every DFS traversal (all roots, all child orders, all arc
// choices) of the resulting code, using the collapsed, loop-free arc view.
DfsCode exhaustive_min_dfs_code(const LabeledDigraph& g);

// All DFS codes of g, for small graphs.
std::vector<DfsCode> all_dfs_codes(const LabeledDigraph& g);

}  // namespace opmine::testing

namespace opmine {
struct Pattern;
}

namespace opmine::testing {

// Unique count computed from brute_force_occurrences, with superpatterns
// found the same way.
int brute_force_unique_count(const Pattern& p, const std::vector<Pattern>& frequent,
                             const std::vector<LabeledDigraph>& corpus);

}  // namespace opmine::testing
