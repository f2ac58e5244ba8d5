#include "opmine/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "opmine/errors.hpp"
#include "opmine/reducer.hpp"

namespace opmine {

namespace {

// Uniform in [0, bound) by rejection; unlike std::uniform_int_distribution
// the sequence is the same on every standard library.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

std::vector<LabeledDigraph> graphs_of(const Corpus& corpus, const std::vector<std::string>& ids) {
  std::vector<LabeledDigraph> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(corpus.graph(id));
  return out;
}

}  // namespace

void SplitConfig::validate() const {
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie strictly between 0 and 1");
  }
}

std::pair<std::vector<std::string>, std::vector<std::string>> split_ids(const Corpus& corpus, const SplitConfig& split,
                                                                        int repeat) {
  split.validate();
  if (corpus.size() < 5) {
    throw ConfigError("split evaluation needs at least 5 graphs, corpus has " + std::to_string(corpus.size()));
  }
  std::vector<std::string> ids;
  for (const auto& g : corpus.graphs()) ids.push_back(g.graph_id());
  std::sort(ids.begin(), ids.end());
  const auto target = static_cast<std::size_t>(std::floor(split.train_fraction * static_cast<double>(ids.size()) + 1e-9));

  std::seed_seq seq{static_cast<std::uint32_t>(split.seed), static_cast<std::uint32_t>(split.seed >> 32),
                    static_cast<std::uint32_t>(repeat)};
  std::mt19937_64 rng(seq);

  std::vector<std::string> train, test;
  if (!split.group_by_repo) {
    shuffle(ids, rng);
    train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(target));
    test.assign(ids.begin() + static_cast<std::ptrdiff_t>(target), ids.end());
  } else {
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& id : ids) {
      const auto& repo = corpus.entry(id).repo_id;
      groups[repo.empty() ? "\x01" + id : repo].push_back(id);
    }
    std::vector<std::string> keys;
    for (const auto& [k, v] : groups) keys.push_back(k);
    shuffle(keys, rng);
    for (const auto& k : keys) {
      auto& members = groups[k];
      auto& side = train.size() + members.size() <= target ? train : test;
      side.insert(side.end(), members.begin(), members.end());
    }
  }
  if (train.empty() || test.empty()) {
    throw ConfigError("train fraction " + std::to_string(split.train_fraction) + " leaves an empty " +
                      (train.empty() ? "training" : "test") + " set");
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

std::vector<SplitRepeat> split_eval(const Corpus& corpus, const MiningConfig& cfg, const SplitConfig& split) {
  cfg.validate();
  split.validate();
  std::vector<SplitRepeat> out;
  for (int r = 0; r < split.repeats; ++r) {
    SplitRepeat rep;
    rep.repeat = r;
    std::tie(rep.train_ids, rep.test_ids) = split_ids(corpus, split, r);
    const auto train = graphs_of(corpus, rep.train_ids);
    const auto test = graphs_of(corpus, rep.test_ids);
    rep.patterns = reduce_frequent_set(mine(train, cfg), train, cfg);
    rep.train = corpus_reduction_stats(train, rep.patterns);
    rep.test = corpus_reduction_stats(test, rep.patterns);
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace opmine
