#include "opmine/report.hpp"

#include <algorithm>
#include <cstdio>

#include "opmine/compressor.hpp"
#include "opmine/errors.hpp"
#include "opmine/reducer.hpp"

namespace opmine {

std::vector<CcdfPoint> ccdf(std::vector<long long> values) {
  if (values.empty()) throw DataError("cannot compute a CCDF of no values");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  std::vector<CcdfPoint> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    out.push_back({values[i], static_cast<double>(values.size() - i) / n});
  }
  return out;
}

OccurrenceStats occurrence_stats(const Pattern& p, std::span<const LabeledDigraph> corpus) {
  const LabeledDigraph pg = p.graph();
  OccurrenceStats s;
  s.per_graph.assign(corpus.size(), 0);
  const long n = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    s.per_graph[static_cast<std::size_t>(i)] =
        static_cast<int>(enumerate_embeddings(pg, corpus[static_cast<std::size_t>(i)]).size());
  }
  std::vector<double> present;
  for (int c : s.per_graph) {
    s.total += c;
    if (c > 0) present.push_back(c);
  }
  s.graphs_containing = static_cast<int>(present.size());
  s.median = summarize(std::move(present)).median;
  return s;
}

std::vector<SweepRow> support_sweep(std::span<const LabeledDigraph> corpus, const std::vector<double>& taus,
                                    const MiningConfig& cfg) {
  std::vector<SweepRow> rows;
  for (double tau : taus) {
    MiningConfig c = cfg;
    c.tau = tau;
    const auto frequent = mine(corpus, c);
    const auto reduced = reduce_frequent_set(frequent, corpus, c);
    rows.push_back({tau, c.min_support(static_cast<int>(corpus.size())), static_cast<int>(frequent.size()),
                    static_cast<int>(reduced.size())});
  }
  return rows;
}

std::string Table::to_text() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += '\t';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace opmine
