#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "opmine/graph.hpp"
#include "opmine/ingest.hpp"

namespace opmine {

struct DedupResult {
  std::vector<LabeledDigraph> kept;  // one per isomorphism class, sorted by graph_id
  // representative graph_id -> its duplicates (sorted); classes of one omitted
  std::map<std::string, std::vector<std::string>> clusters;
};

// WL-hash bucketing followed by exact isomorphism checks within buckets.
// The representative of each class is its smallest graph_id.
DedupResult dedup_corpus(std::span<const LabeledDigraph> graphs);
DedupResult dedup_corpus_serial(std::span<const LabeledDigraph> graphs);

// Corpus restricted to the kept representatives (manifest order preserved).
Corpus dedup_corpus(const Corpus& corpus, std::map<std::string, std::vector<std::string>>* clusters = nullptr);

}  // namespace opmine
