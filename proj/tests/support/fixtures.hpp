#pragma once

#include <vector>

#include "opmine/graph.hpp"

namespace opmine::testing {

// {A->B->C->D x3, A->B->C}
std::vector<LabeledDigraph> abcd_corpus();

// Ten graphs: six hold a 30-node chain with distinct labels, one holds five
// disjoint 4-node pieces of that chain, three are unrelated noise. At tau 0.6
// the reduced set is the chain alone; at 0.7 it is the five pieces.
std::vector<LabeledDigraph> fragment_anomaly_corpus();
inline constexpr int kAnomalyChainLength = 30;

// p disjoint copies of a k-node chain (labels P0..), plus m filler nodes
// wired to each other and to the copies without creating new occurrences.
LabeledDigraph planted_copies_graph(int p, int k, int m, const std::string& id = {});
LabeledDigraph planted_chain_pattern_graph(int k);

}  // namespace opmine::testing

#include "opmine/ingest.hpp"

namespace opmine::testing {

// Corpus with a manifest entry per graph; repo i/`per_repo` when per_repo > 0.
Corpus corpus_of(std::vector<LabeledDigraph> graphs, int per_repo = 0);

// n graphs, each one copy of a k-node chain (labels P0..) plus m filler
// nodes whose labels are unique to that graph, so the chain is the only
// frequent structure and every graph compresses by exactly (k-1)/(k+m).
Corpus planted_fraction_corpus(int n, int k, int m);

}  // namespace opmine::testing
