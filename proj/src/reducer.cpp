#include "opmine/reducer.hpp"

#include <algorithm>

namespace opmine {

namespace {

using NodeSets = std::vector<std::vector<NodeId>>;

NodeSets occurrence_sets(const LabeledDigraph& pattern, const LabeledDigraph& g) {
  NodeSets out;
  for (auto& [nodes, emb] : enumerate_embeddings(pattern, g)) out.push_back(nodes);
  return out;
}

bool escapes(const NodeSets& own, const std::vector<const NodeSets*>& bigger) {
  for (const auto& o : own) {
    bool inside = false;
    for (const NodeSets* sets : bigger) {
      for (const auto& s : *sets) {
        if (std::includes(s.begin(), s.end(), o.begin(), o.end())) {
          inside = true;
          break;
        }
      }
      if (inside) break;
    }
    if (!inside) return true;
  }
  return false;
}

std::vector<int> compute_unique_counts(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus,
                                       bool parallel) {
  const std::size_t np = frequent.size();
  const std::size_t ng = corpus.size();
  std::vector<LabeledDigraph> pg(np);
  for (std::size_t i = 0; i < np; ++i) pg[i] = frequent[i].graph();

  std::vector<std::vector<std::size_t>> supers(np);
  const long lnp = static_cast<long>(np);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long li = 0; li < lnp; ++li) {
    const auto i = static_cast<std::size_t>(li);
    for (std::size_t k = 0; k < np; ++k) {
      const auto& p = frequent[i];
      const auto& q = frequent[k];
      if (p.edge_count >= q.edge_count || p.node_count > q.node_count) continue;
      if (contains_subgraph(pg[i], pg[k])) supers[i].push_back(k);
    }
  }

  std::vector<char> needed(np, 0);
  for (std::size_t i = 0; i < np; ++i) {
    if (supers[i].empty()) continue;
    needed[i] = 1;
    for (std::size_t k : supers[i]) needed[k] = 1;
  }
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < np; ++i) {
    if (!needed[i]) continue;
    for (std::size_t g = 0; g < ng; ++g) jobs.emplace_back(i, g);
  }
  std::vector<NodeSets> table(np * ng);
  const long nj = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long j = 0; j < nj; ++j) {
    const auto [i, g] = jobs[static_cast<std::size_t>(j)];
    table[i * ng + g] = occurrence_sets(pg[i], corpus[g]);
  }

  std::vector<int> counts(np, 0);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long li = 0; li < lnp; ++li) {
    const auto i = static_cast<std::size_t>(li);
    if (supers[i].empty()) {
      counts[i] = frequent[i].support;
      continue;
    }
    int c = 0;
    for (std::size_t g = 0; g < ng; ++g) {
      const auto& own = table[i * ng + g];
      if (own.empty()) continue;
      std::vector<const NodeSets*> bigger;
      for (std::size_t k : supers[i]) bigger.push_back(&table[k * ng + g]);
      if (escapes(own, bigger)) ++c;
    }
    counts[i] = c;
  }
  return counts;
}

std::vector<Pattern> reduce(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus,
                            const MiningConfig& cfg, bool parallel) {
  const int min_sup = cfg.min_support(static_cast<int>(corpus.size()));
  const auto counts = compute_unique_counts(frequent, corpus, parallel);
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    if (counts[i] < min_sup) continue;
    Pattern p = frequent[i];
    p.unique_count = counts[i];
    out.push_back(std::move(p));
  }
  sort_patterns(out);
  return out;
}

}  // namespace

int unique_count(const Pattern& p, const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus) {
  const LabeledDigraph pgraph = p.graph();
  std::vector<LabeledDigraph> bigger;
  for (const auto& q : frequent) {
    if (q.edge_count <= p.edge_count || q.node_count < p.node_count) continue;
    auto qg = q.graph();
    if (contains_subgraph(pgraph, qg)) bigger.push_back(std::move(qg));
  }
  int count = 0;
  for (const auto& g : corpus) {
    const auto own = occurrence_sets(pgraph, g);
    if (own.empty()) continue;
    std::vector<NodeSets> sets;
    for (const auto& qg : bigger) sets.push_back(occurrence_sets(qg, g));
    std::vector<const NodeSets*> ptrs;
    for (const auto& s : sets) ptrs.push_back(&s);
    if (escapes(own, ptrs)) ++count;
  }
  return count;
}

std::vector<int> unique_counts(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus) {
  return compute_unique_counts(frequent, corpus, true);
}

std::vector<int> unique_counts_serial(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus) {
  return compute_unique_counts(frequent, corpus, false);
}

std::vector<Pattern> reduce_frequent_set(const std::vector<Pattern>& frequent, std::span<const LabeledDigraph> corpus,
                                         const MiningConfig& cfg) {
  return reduce(frequent, corpus, cfg, true);
}

std::vector<Pattern> reduce_frequent_set_serial(const std::vector<Pattern>& frequent,
                                                std::span<const LabeledDigraph> corpus, const MiningConfig& cfg) {
  return reduce(frequent, corpus, cfg, false);
}

}  // namespace opmine
