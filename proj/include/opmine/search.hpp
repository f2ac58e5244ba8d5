#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opmine/ingest.hpp"

namespace opmine {

// Lowercased runs of ASCII letters and digits.
std::vector<std::string> tokenize(std::string_view text);

struct ScoredGraph {
  std::string graph_id;
  double score = 0.0;

  friend bool operator==(const ScoredGraph&, const ScoredGraph&) = default;
};

// TF-IDF index over manifest text (description + readme + tags). Raw term
// frequency, idf(t) = ln(N / df(t)), document vectors L2-normalized.
class TfIdfIndex {
 public:
  using SparseVector = std::vector<std::pair<int, double>>;  // (dimension, weight), sorted

  // Throws IndexBuildError when no entry has any token.
  static TfIdfIndex build(const CorpusManifest& manifest);

  // Entries with cosine similarity > threshold, by descending score then
  // graph_id. Throws QueryError when the query has no tokens.
  std::vector<ScoredGraph> query(std::string_view text, double threshold = 0.0) const;

  const std::map<std::string, int>& vocabulary() const { return vocabulary_; }
  double idf(const std::string& term) const;
  int document_frequency(const std::string& term) const;
  // Raw counts before weighting.
  const std::map<std::string, int>& term_counts(const std::string& graph_id) const;
  const SparseVector& vector(const std::string& graph_id) const;
  std::size_t size() const { return ids_.size(); }

 private:
  std::map<std::string, int> vocabulary_;
  std::vector<double> idf_;
  std::vector<int> df_;
  std::vector<std::string> ids_;
  std::vector<std::map<std::string, int>> counts_;
  std::vector<SparseVector> vectors_;
  std::map<std::string, std::size_t> row_;
};

inline TfIdfIndex build_index(const CorpusManifest& manifest) { return TfIdfIndex::build(manifest); }

inline std::vector<ScoredGraph> query_task(const TfIdfIndex& index, std::string_view query, double threshold = 0.0) {
  return index.query(query, threshold);
}

}  // namespace opmine
