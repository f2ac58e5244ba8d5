#include "opmine/search.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "opmine/errors.hpp"

namespace opmine {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalnum(u)) {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

namespace {

std::string document_text(const ManifestEntry& e) {
  std::string text = e.description + ' ' + e.readme_text;
  for (const auto& t : e.task_tags) text += ' ' + t;
  return text;
}

void normalize(TfIdfIndex::SparseVector& v) {
  double norm = 0.0;
  for (const auto& [dim, w] : v) norm += w * w;
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    v.clear();
    return;
  }
  for (auto& [dim, w] : v) w /= norm;
}

}  // namespace

TfIdfIndex TfIdfIndex::build(const CorpusManifest& manifest) {
  TfIdfIndex index;
  bool any = false;
  for (const auto& e : manifest.entries) {
    std::map<std::string, int> counts;
    for (auto& tok : tokenize(document_text(e))) ++counts[tok];
    any = any || !counts.empty();
    index.row_.emplace(e.graph_id, index.ids_.size());
    index.ids_.push_back(e.graph_id);
    index.counts_.push_back(std::move(counts));
  }
  if (!any) throw IndexBuildError("no manifest entry has any descriptive text to index");

  for (const auto& counts : index.counts_) {
    for (const auto& [term, c] : counts) {
      auto [it, fresh] = index.vocabulary_.try_emplace(term, static_cast<int>(index.vocabulary_.size()));
      if (fresh) index.df_.push_back(0);
      ++index.df_[static_cast<std::size_t>(it->second)];
    }
  }
  const double n = static_cast<double>(index.ids_.size());
  for (int df : index.df_) index.idf_.push_back(std::log(n / df));

  for (const auto& counts : index.counts_) {
    SparseVector v;
    for (const auto& [term, c] : counts) {
      const int dim = index.vocabulary_.at(term);
      const double w = c * index.idf_[static_cast<std::size_t>(dim)];
      if (w > 0.0) v.emplace_back(dim, w);
    }
    std::sort(v.begin(), v.end());
    normalize(v);
    index.vectors_.push_back(std::move(v));
  }
  return index;
}

std::vector<ScoredGraph> TfIdfIndex::query(std::string_view text, double threshold) const {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw QueryError("query '" + std::string(text) + "' has no searchable terms");
  std::map<int, int> counts;
  for (const auto& tok : tokens) {
    auto it = vocabulary_.find(tok);
    if (it != vocabulary_.end()) ++counts[it->second];
  }
  SparseVector q;
  for (const auto& [dim, c] : counts) {
    const double w = c * idf_[static_cast<std::size_t>(dim)];
    if (w > 0.0) q.emplace_back(dim, w);
  }
  normalize(q);

  std::vector<ScoredGraph> out;
  if (q.empty()) return out;
  for (std::size_t d = 0; d < ids_.size(); ++d) {
    const auto& v = vectors_[d];
    double dot = 0.0;
    auto a = q.begin();
    auto b = v.begin();
    while (a != q.end() && b != v.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        dot += a->second * b->second;
        ++a;
        ++b;
      }
    }
    dot = std::clamp(dot, 0.0, 1.0);
    if (dot > threshold) out.push_back({ids_[d], dot});
  }
  std::sort(out.begin(), out.end(), [](const ScoredGraph& x, const ScoredGraph& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.graph_id < y.graph_id;
  });
  return out;
}

double TfIdfIndex::idf(const std::string& term) const {
  auto it = vocabulary_.find(term);
  if (it == vocabulary_.end()) throw QueryError("term '" + term + "' is not in the vocabulary");
  return idf_[static_cast<std::size_t>(it->second)];
}

int TfIdfIndex::document_frequency(const std::string& term) const {
  auto it = vocabulary_.find(term);
  return it == vocabulary_.end() ? 0 : df_[static_cast<std::size_t>(it->second)];
}

const std::map<std::string, int>& TfIdfIndex::term_counts(const std::string& graph_id) const {
  return counts_.at(row_.at(graph_id));
}

const TfIdfIndex::SparseVector& TfIdfIndex::vector(const std::string& graph_id) const {
  return vectors_.at(row_.at(graph_id));
}

}  // namespace opmine
