#include <random>

#include <gtest/gtest.h>

#include "opmine/brute_force.hpp"
#include "opmine/errors.hpp"
#include "opmine/miner.hpp"
#include "support/generators.hpp"

namespace opmine {
namespace {

using testing::make_chain;
using testing::make_graph;

std::vector<std::pair<std::string, int>> summarize(const std::vector<Pattern>& ps) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& p : ps) out.emplace_back(p.code.to_string(), p.support);
  return out;
}

Pattern pattern_of(const LabeledDigraph& g, int support) { return make_pattern(min_dfs_code(g), support); }

std::vector<LabeledDigraph> chain_corpus() {
  return {make_chain({"A", "B", "C"}), make_chain({"A", "B", "C"}), make_chain({"A", "B"})};
}

TEST(MiningConfigTest, MinSupportIsInclusiveCeiling) {
  MiningConfig cfg;
  cfg.tau = 0.7;
  EXPECT_EQ(cfg.min_support(10), 7);
  cfg.tau = 0.66;
  EXPECT_EQ(cfg.min_support(3), 2);
  cfg.tau = 0.5;
  EXPECT_EQ(cfg.min_support(4), 2);
  cfg.tau = 1.0;
  EXPECT_EQ(cfg.min_support(6), 6);
  cfg.tau = 0.01;
  EXPECT_EQ(cfg.min_support(3), 1);
}

TEST(MiningConfigTest, Validation) {
  MiningConfig cfg;
  cfg.tau = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.tau = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.tau = 0.5;
  cfg.min_nodes = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SupportTest, Examples) {
  const std::vector<LabeledDigraph> d{make_chain({"A", "B", "C"}), make_chain({"A", "B"}),
                                      make_chain({"C", "A", "B"})};
  EXPECT_EQ(support(pattern_of(make_chain({"A", "B"}), 0), d), 3);
  EXPECT_EQ(support(pattern_of(make_chain({"A", "B", "C"}), 0), d), 1);
  EXPECT_EQ(support(pattern_of(make_chain({"B", "C"}), 0), d), 1);
  EXPECT_EQ(support_serial(pattern_of(make_chain({"A", "B"}), 0), d), 3);
}

TEST(MineFrequentTest, ChainCorpusTwoNodes) {
  MiningConfig cfg{0.66, 2, false, std::nullopt, 0};
  const auto corpus = chain_corpus();
  const auto mined = mine_frequent(corpus, cfg);
  // Frozen from the brute-force catalog.
  const std::vector<std::pair<std::string, int>> expected{
      {"(0,1,A,>,B);(1,2,B,>,C)", 2}, {"(0,1,A,>,B)", 3}, {"(0,1,B,>,C)", 2}};
  EXPECT_EQ(summarize(mined), expected);
  EXPECT_EQ(summarize(brute_force_mine(corpus, cfg)), expected);
}

TEST(MineFrequentTest, ChainCorpusThreeNodes) {
  MiningConfig cfg{0.66, 3, false, std::nullopt, 0};
  const auto mined = mine_frequent(chain_corpus(), cfg);
  const std::vector<std::pair<std::string, int>> expected{{"(0,1,A,>,B);(1,2,B,>,C)", 2}};
  EXPECT_EQ(summarize(mined), expected);
}

TEST(MineFrequentTest, SharedLabelAtFullSupport) {
  const std::vector<LabeledDigraph> d{make_graph({"X", "A"}, {{0, 1}}), make_graph({"B", "X"}, {{0, 1}}),
                                      make_graph({"X"}, {})};
  MiningConfig cfg{1.0, 1, false, std::nullopt, 0};
  const std::vector<std::pair<std::string, int>> expected{{"(X)", 3}};
  EXPECT_EQ(summarize(mine_frequent(d, cfg)), expected);
}

TEST(MineFrequentTest, EmptyCorpusIsConfigError) {
  std::vector<LabeledDigraph> empty;
  EXPECT_THROW(mine_frequent(empty, MiningConfig{}), ConfigError);
}

TEST(MineFrequentTest, EdgeCap) {
  MiningConfig cfg{0.5, 1, false, 1, 0};
  for (const auto& p : mine_frequent(chain_corpus(), cfg)) EXPECT_LE(p.edge_count, 1);
}

TEST(MineFrequentTest, TwoCyclesAndParallelArcs) {
  // Parallel arcs collapse; u->v and v->u are distinct.
  const std::vector<LabeledDigraph> d{make_graph({"A", "B"}, {{0, 1}, {1, 0}, {0, 1}}),
                                      make_graph({"A", "B"}, {{0, 1}, {1, 0}})};
  MiningConfig cfg{1.0, 2, false, std::nullopt, 0};
  EXPECT_EQ(summarize(mine_frequent(d, cfg)), summarize(brute_force_mine(d, cfg)));
  EXPECT_EQ(mine_frequent(d, cfg).size(), 3U);
}

TEST(MineFrequentTest, SerialAndParallelAgree) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LabeledDigraph> corpus;
    for (int i = 0; i < 6; ++i) corpus.push_back(testing::random_graph(rng, {4, 9, 3, 0.2, 0.5}));
    MiningConfig cfg{0.5, 1, false, std::nullopt, 0};
    EXPECT_EQ(mine_frequent(corpus, cfg), mine_frequent_serial(corpus, cfg));
  }
}

TEST(MineFrequentTest, MatchesBruteForceOnSmallCorpora) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<LabeledDigraph> corpus;
    for (int i = 0; i < 4; ++i) corpus.push_back(testing::random_graph(rng, {1, 7, 3, 0.2, 0.5}));
    const BruteForceCatalog catalog(corpus);
    for (double tau : {0.3, 0.7}) {
      MiningConfig cfg{tau, 1, false, std::nullopt, 0};
      EXPECT_EQ(summarize(mine_frequent(corpus, cfg)), summarize(catalog.mine(cfg))) << "trial " << trial;
    }
  }
}

TEST(ClosedFilterTest, Examples) {
  const auto ab = pattern_of(make_chain({"A", "B"}), 2);
  const auto bc = pattern_of(make_chain({"B", "C"}), 2);
  const auto abc = pattern_of(make_chain({"A", "B", "C"}), 2);
  EXPECT_EQ(closed_filter({abc, ab, bc}), std::vector<Pattern>{abc});

  auto ab3 = ab;
  ab3.support = 3;
  EXPECT_EQ(closed_filter({abc, ab3}), (std::vector<Pattern>{abc, ab3}));
  EXPECT_EQ(closed_filter({ab}), std::vector<Pattern>{ab});
}

TEST(ClosedFilterProperty, OneEdgeStepMatchesAllPairs) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<LabeledDigraph> corpus;
    for (int i = 0; i < 6; ++i) corpus.push_back(testing::random_graph(rng, {3, 8, 3, 0.2, 0.5}));
    for (int min_nodes : {1, 3}) {
      MiningConfig cfg{0.3, min_nodes, false, 5, 0};
      const auto frequent = mine_frequent(corpus, cfg);
      EXPECT_EQ(closed_filter(frequent), closed_filter_exhaustive(frequent));
    }
  }
}

TEST(StrictSubpatternTest, Basics) {
  const auto ab = pattern_of(make_chain({"A", "B"}), 1);
  const auto abc = pattern_of(make_chain({"A", "B", "C"}), 1);
  EXPECT_TRUE(is_strict_subpattern(ab, abc));
  EXPECT_FALSE(is_strict_subpattern(abc, ab));
  EXPECT_FALSE(is_strict_subpattern(ab, ab));
}

TEST(BruteForceTest, EdgelessCorpus) {
  const std::vector<LabeledDigraph> d{make_graph({"A", "B"}, {}), make_graph({"A"}, {})};
  EXPECT_TRUE(brute_force_mine(d, MiningConfig{0.5, 2, false, std::nullopt, 0}).empty());
}

TEST(BruteForceTest, SingleGraphListsAllConnectedClasses) {
  const std::vector<LabeledDigraph> d{make_chain({"A", "B", "C"})};
  const auto all = brute_force_mine(d, MiningConfig{1.0, 1, false, std::nullopt, 0});
  // A, B, C, A->B, B->C, A->B->C
  EXPECT_EQ(all.size(), 6U);
}

TEST(BruteForceTest, ScaleLimits) {
  std::vector<LabeledDigraph> many(9, make_chain({"A", "B"}));
  EXPECT_THROW(BruteForceCatalog{many}, OracleScaleError);
  std::vector<LabeledDigraph> big{make_chain(std::vector<std::string>(11, "A"))};
  EXPECT_THROW(BruteForceCatalog{big}, OracleScaleError);
}

}  // namespace
}  // namespace opmine
