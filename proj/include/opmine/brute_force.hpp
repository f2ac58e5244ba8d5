#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "opmine/dfs_code.hpp"
#include "opmine/miner.hpp"

namespace opmine {

// Exhaustive reference miner. Enumerates every connected arc subset (and
// every single vertex) of every graph in the mining view, canonicalizes
// each, and counts support by existence. Limited to small inputs.
class BruteForceCatalog {
 public:
  static constexpr int kMaxGraphs = 8;
  static constexpr int kMaxNodes = 10;

  // Throws OracleScaleError when the corpus exceeds the limits above.
  explicit BruteForceCatalog(std::span<const LabeledDigraph> corpus,
                             std::optional<int> max_pattern_edges = std::nullopt);

  // Thresholds applied to the catalog; same contract as mine_frequent.
  std::vector<Pattern> mine(const MiningConfig& cfg) const;

  int corpus_size() const { return corpus_size_; }
  const std::map<DfsCode, int>& supports() const { return support_; }

 private:
  int corpus_size_ = 0;
  std::optional<int> max_edges_;
  std::map<DfsCode, int> support_;
};

std::vector<Pattern> brute_force_mine(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg);

}  // namespace opmine
