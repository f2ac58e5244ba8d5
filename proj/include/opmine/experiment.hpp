#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opmine/compressor.hpp"
#include "opmine/ingest.hpp"
#include "opmine/miner.hpp"

namespace opmine {

struct SplitConfig {
  int repeats = 5;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  // Keep every repository wholly on one side of the split.
  bool group_by_repo = false;

  void validate() const;
};

struct SplitRepeat {
  int repeat = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::vector<Pattern> patterns;  // mined and reduced on the training graphs
  ReductionStats train;
  ReductionStats test;
};

// Seeded train/test splits. Throws ConfigError when the corpus has fewer
// than five graphs or either side of a split would be empty.
std::vector<SplitRepeat> split_eval(const Corpus& corpus, const MiningConfig& cfg, const SplitConfig& split);

// Ids of one split (sorted ids, Fisher-Yates under mt19937_64), exposed for
// testing. Train gets floor(train_fraction * N) graphs, or whole
// repositories up to that many when grouping.
std::pair<std::vector<std::string>, std::vector<std::string>> split_ids(const Corpus& corpus, const SplitConfig& split,
                                                                        int repeat);

}  // namespace opmine
