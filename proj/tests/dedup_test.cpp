#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "opmine/dedup.hpp"
#include "support/generators.hpp"

using namespace opmine;
using namespace opmine::testing;

TEST(DedupTest, KeepsSmallestIdPerClass) {
  const auto g = make_graph({"A", "B", "C"}, {{0, 1}, {1, 2}}, "G");
  const auto g2 = permute(make_graph({"A", "B", "C"}, {{0, 1}, {1, 2}}, "G2"), {2, 0, 1});
  const auto h = make_graph({"A", "B", "C"}, {{0, 1}, {2, 1}}, "H");
  const std::vector<LabeledDigraph> input{g2, h, g};
  const auto r = dedup_corpus(input);
  ASSERT_EQ(r.kept.size(), 2U);
  EXPECT_EQ(r.kept[0].graph_id(), "G");
  EXPECT_EQ(r.kept[1].graph_id(), "H");
  ASSERT_EQ(r.clusters.size(), 1U);
  EXPECT_EQ(r.clusters.at("G"), std::vector<std::string>{"G2"});
}

TEST(DedupTest, EmptyInput) {
  const auto r = dedup_corpus(std::vector<LabeledDigraph>{});
  EXPECT_TRUE(r.kept.empty());
  EXPECT_TRUE(r.clusters.empty());
}

TEST(DedupTest, SameWlHashButNotIsomorphicStaysSeparate) {
  // A 6-cycle and two 3-cycles are indistinguishable by colour refinement.
  const auto six = make_graph({"A", "A", "A", "A", "A", "A"}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}, "six");
  const auto two = make_graph({"A", "A", "A", "A", "A", "A"}, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}, "two");
  ASSERT_EQ(wl_hash(six), wl_hash(two));
  const auto r = dedup_corpus(std::vector<LabeledDigraph>{six, two});
  EXPECT_EQ(r.kept.size(), 2U);
  EXPECT_TRUE(r.clusters.empty());
}

TEST(DedupTest, CorpusOverloadKeepsManifestOrder) {
  CorpusManifest m;
  std::vector<LabeledDigraph> graphs;
  for (std::string id : {"c", "a", "b"}) {
    ManifestEntry e;
    e.graph_id = id;
    m.entries.push_back(e);
    graphs.push_back(make_chain({"X", "Y"}, id));
  }
  graphs[2] = make_chain({"Y", "X"}, "b");
  std::map<std::string, std::vector<std::string>> clusters;
  const auto kept = dedup_corpus(Corpus(m, graphs), &clusters);
  ASSERT_EQ(kept.size(), 2U);
  EXPECT_EQ(kept.entries()[0].graph_id, "a");
  EXPECT_EQ(kept.entries()[1].graph_id, "b");
  EXPECT_EQ(clusters.at("a"), std::vector<std::string>{"c"});
}

namespace {

// Corpus with planted duplicates: random bases, each copied a few times
// under permutation.
std::vector<LabeledDigraph> corpus_with_duplicates(std::mt19937_64& rng, int bases) {
  std::vector<LabeledDigraph> out;
  std::uniform_int_distribution<int> copies(0, 3);
  RandomGraphSpec spec{1, 6, 2, 0.2, 0.6};
  for (int b = 0; b < bases; ++b) {
    const auto base = random_graph(rng, spec);
    const int k = copies(rng);
    for (int c = 0; c <= k; ++c) {
      auto g = permute(base, random_permutation(rng, base.node_count()));
      g.set_graph_id("g" + std::to_string(b) + "_" + std::to_string(c));
      out.push_back(std::move(g));
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

TEST(DedupProperty, KeptGraphsArePairwiseNonIsomorphic) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto input = corpus_with_duplicates(rng, 8);
    const auto r = dedup_corpus(input);
    for (std::size_t i = 0; i < r.kept.size(); ++i) {
      for (std::size_t j = i + 1; j < r.kept.size(); ++j) EXPECT_FALSE(is_isomorphic(r.kept[i], r.kept[j]));
    }
    // every input maps to exactly one kept representative
    for (const auto& g : input) {
      const auto n = std::count_if(r.kept.begin(), r.kept.end(), [&](const auto& k) { return is_isomorphic(g, k); });
      EXPECT_EQ(n, 1);
    }
    for (const auto& [rep, dups] : r.clusters) {
      for (const auto& d : dups) EXPECT_LT(rep, d);
    }
  }
}

TEST(DedupProperty, Idempotent) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = dedup_corpus(corpus_with_duplicates(rng, 8));
    const auto again = dedup_corpus(r.kept);
    EXPECT_EQ(again.kept, r.kept);
    EXPECT_TRUE(again.clusters.empty());
  }
}

TEST(DedupProperty, InputOrderDoesNotMatter) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto input = corpus_with_duplicates(rng, 8);
    const auto a = dedup_corpus(input);
    std::shuffle(input.begin(), input.end(), rng);
    const auto b = dedup_corpus(input);
    EXPECT_EQ(a.kept, b.kept);
    EXPECT_EQ(a.clusters, b.clusters);
  }
}

TEST(DedupProperty, SerialMatchesParallel) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto input = corpus_with_duplicates(rng, 12);
    const auto a = dedup_corpus(input);
    const auto b = dedup_corpus_serial(input);
    EXPECT_EQ(a.kept, b.kept);
    EXPECT_EQ(a.clusters, b.clusters);
  }
}
