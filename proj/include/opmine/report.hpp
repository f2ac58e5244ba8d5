#pragma once

#include <span>
#include <string>
#include <vector>

#include "opmine/graph.hpp"
#include "opmine/miner.hpp"

namespace opmine {

struct CcdfPoint {
  long long x = 0;
  double fraction = 0.0;  // P(X >= x)

  friend bool operator==(const CcdfPoint&, const CcdfPoint&) = default;
};

// One point per distinct value, ascending. Throws DataError on empty input.
std::vector<CcdfPoint> ccdf(std::vector<long long> values);

struct OccurrenceStats {
  int total = 0;
  int graphs_containing = 0;
  std::vector<int> per_graph;  // corpus order, zeros included
  double median = 0.0;         // over graphs with at least one occurrence
};

// Occurrences are distinct image node-sets.
OccurrenceStats occurrence_stats(const Pattern& p, std::span<const LabeledDigraph> corpus);

struct SweepRow {
  double tau = 0.0;
  int min_support = 0;
  int frequent = 0;  // after the closed filter when cfg.closed_only
  int reduced = 0;
};

// One mining + reduction run per tau, other settings from cfg.
std::vector<SweepRow> support_sweep(std::span<const LabeledDigraph> corpus, const std::vector<double>& taus,
                                    const MiningConfig& cfg);

// Tab-separated text with a header line.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_text() const;
};

std::string format_real(double value);

}  // namespace opmine
