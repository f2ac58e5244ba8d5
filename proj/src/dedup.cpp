#include "opmine/dedup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace opmine {

namespace {

struct Classes {
  std::vector<std::size_t> representatives;
  std::map<std::size_t, std::vector<std::size_t>> members;
};

// Splits one hash bucket (indices sorted by graph_id) into isomorphism classes.
Classes split_bucket(std::span<const LabeledDigraph> graphs, const std::vector<std::size_t>& bucket) {
  Classes c;
  for (std::size_t idx : bucket) {
    bool placed = false;
    for (std::size_t rep : c.representatives) {
      if (is_isomorphic(graphs[rep], graphs[idx])) {
        c.members[rep].push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) c.representatives.push_back(idx);
  }
  return c;
}

std::vector<std::vector<std::size_t>> buckets_by_hash(std::span<const LabeledDigraph> graphs,
                                                      const std::vector<std::uint64_t>& hashes) {
  std::vector<std::size_t> order(graphs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (hashes[a] != hashes[b]) return hashes[a] < hashes[b];
    if (graphs[a].graph_id() != graphs[b].graph_id()) return graphs[a].graph_id() < graphs[b].graph_id();
    return a < b;
  });
  std::vector<std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || hashes[order[k]] != hashes[order[k - 1]]) buckets.emplace_back();
    buckets.back().push_back(order[k]);
  }
  return buckets;
}

DedupResult assemble(std::span<const LabeledDigraph> graphs, const std::vector<Classes>& per_bucket) {
  std::vector<std::size_t> reps;
  DedupResult result;
  for (const auto& c : per_bucket) {
    reps.insert(reps.end(), c.representatives.begin(), c.representatives.end());
    for (const auto& [rep, dups] : c.members) {
      auto& ids = result.clusters[graphs[rep].graph_id()];
      for (std::size_t d : dups) ids.push_back(graphs[d].graph_id());
      std::sort(ids.begin(), ids.end());
    }
  }
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    if (graphs[a].graph_id() != graphs[b].graph_id()) return graphs[a].graph_id() < graphs[b].graph_id();
    return a < b;
  });
  for (std::size_t r : reps) result.kept.push_back(graphs[r]);
  return result;
}

}  // namespace

DedupResult dedup_corpus(std::span<const LabeledDigraph> graphs) {
  const long n = static_cast<long>(graphs.size());
  std::vector<std::uint64_t> hashes(graphs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) hashes[static_cast<std::size_t>(i)] = wl_hash(graphs[static_cast<std::size_t>(i)]);

  const auto buckets = buckets_by_hash(graphs, hashes);
  std::vector<Classes> per_bucket(buckets.size());
  const long nb = static_cast<long>(buckets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < nb; ++b) {
    per_bucket[static_cast<std::size_t>(b)] = split_bucket(graphs, buckets[static_cast<std::size_t>(b)]);
  }
  return assemble(graphs, per_bucket);
}

DedupResult dedup_corpus_serial(std::span<const LabeledDigraph> graphs) {
  std::vector<std::uint64_t> hashes;
  hashes.reserve(graphs.size());
  for (const auto& g : graphs) hashes.push_back(wl_hash(g));
  std::vector<Classes> per_bucket;
  for (const auto& bucket : buckets_by_hash(graphs, hashes)) per_bucket.push_back(split_bucket(graphs, bucket));
  return assemble(graphs, per_bucket);
}

Corpus dedup_corpus(const Corpus& corpus, std::map<std::string, std::vector<std::string>>* clusters) {
  auto result = dedup_corpus(std::span<const LabeledDigraph>(corpus.graphs()));
  std::set<std::string> kept;
  for (const auto& g : result.kept) kept.insert(g.graph_id());
  std::vector<std::string> ids;
  for (const auto& e : corpus.entries()) {
    if (kept.count(e.graph_id)) ids.push_back(e.graph_id);
  }
  if (clusters) *clusters = std::move(result.clusters);
  return corpus.select(ids);
}

}  // namespace opmine
