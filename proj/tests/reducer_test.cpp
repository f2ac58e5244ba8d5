#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "opmine/brute_force.hpp"
#include "opmine/reducer.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace opmine;
using namespace opmine::testing;

namespace {

Pattern chain_pattern(const std::vector<std::string>& labels, int support) {
  return make_pattern(min_dfs_code(make_chain(labels)), support);
}

std::set<std::string> codes(const std::vector<Pattern>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.code.to_string());
  return out;
}

}  // namespace

TEST(UniqueCountTest, OnlyTheShortGraphCounts) {
  const auto corpus = abcd_corpus();
  const auto abc = chain_pattern({"A", "B", "C"}, 4);
  const auto abcd = chain_pattern({"A", "B", "C", "D"}, 3);
  EXPECT_EQ(unique_count(abc, {abc, abcd}, corpus), 1);
  EXPECT_EQ(unique_count(abcd, {abc, abcd}, corpus), 3);
}

TEST(UniqueCountTest, OccurrenceOutsideTheBiggerPatternCounts) {
  // A->B->C->D plus a separate A->B->C in the same graph
  auto g = make_chain({"A", "B", "C", "D"}, "g");
  const NodeId a = g.add_node(OpLabel("A"));
  const NodeId b = g.add_node(OpLabel("B"));
  const NodeId c = g.add_node(OpLabel("C"));
  g.add_edge(a, b);
  g.add_edge(b, c);
  const std::vector<LabeledDigraph> corpus{g};
  const auto abc = chain_pattern({"A", "B", "C"}, 1);
  const auto abcd = chain_pattern({"A", "B", "C", "D"}, 1);
  EXPECT_EQ(unique_count(abc, {abc, abcd}, corpus), 1);
}

TEST(ReduceFrequentSetTest, KeepsOnlyTheLongChain) {
  const auto corpus = abcd_corpus();
  MiningConfig cfg;
  cfg.tau = 0.5;
  const auto frequent = mine(corpus, cfg);
  ASSERT_EQ(codes(frequent), (std::set<std::string>{"(0,1,A,>,B);(1,2,B,>,C)", "(0,1,A,>,B);(1,2,B,>,C);(2,3,C,>,D)"}));
  const auto reduced = reduce_frequent_set(frequent, corpus, cfg);
  ASSERT_EQ(reduced.size(), 1U);
  EXPECT_EQ(reduced[0].code.to_string(), "(0,1,A,>,B);(1,2,B,>,C);(2,3,C,>,D)");
  EXPECT_EQ(reduced[0].unique_count, 3);
  EXPECT_EQ(unique_counts(frequent, corpus), (std::vector<int>{3, 1}));
}

TEST(ReduceFrequentSetTest, IncomparablePatternsUnchanged) {
  const std::vector<LabeledDigraph> corpus{make_chain({"A", "B", "C"}), make_chain({"X", "Y", "Z"}),
                                           make_chain({"A", "B", "C"})};
  MiningConfig cfg;
  cfg.tau = 0.3;
  const auto frequent = mine(corpus, cfg);
  ASSERT_EQ(frequent.size(), 2U);
  const auto reduced = reduce_frequent_set(frequent, corpus, cfg);
  ASSERT_EQ(codes(reduced), codes(frequent));
  for (const auto& p : reduced) EXPECT_EQ(p.unique_count, p.support);
}

TEST(ReduceFrequentSetTest, EmptyInput) {
  const auto corpus = abcd_corpus();
  EXPECT_TRUE(reduce_frequent_set({}, corpus, MiningConfig{}).empty());
}

TEST(ReduceFrequentSetTest, FragmentsTakeOverAboveSeventyPercent) {
  const auto corpus = fragment_anomaly_corpus();
  MiningConfig cfg;
  cfg.tau = 0.6;
  const auto low = reduce_frequent_set(mine(corpus, cfg), corpus, cfg);
  ASSERT_EQ(low.size(), 1U);
  EXPECT_EQ(low[0].node_count, kAnomalyChainLength);
  EXPECT_EQ(low[0].support, 6);
  cfg.tau = 0.7;
  const auto high = reduce_frequent_set(mine(corpus, cfg), corpus, cfg);
  ASSERT_EQ(high.size(), 5U);
  for (const auto& p : high) {
    EXPECT_EQ(p.node_count, 4);
    EXPECT_EQ(p.support, 7);
  }
}

namespace {

std::vector<LabeledDigraph> random_corpus(std::mt19937_64& rng, int graphs) {
  std::vector<LabeledDigraph> out;
  RandomGraphSpec spec{3, 7, 2, 0.25, 0.5};
  for (int i = 0; i < graphs; ++i) out.push_back(random_graph(rng, spec, "g" + std::to_string(i)));
  return out;
}

}  // namespace

TEST(ReducerProperty, UniqueCountMatchesBruteForce) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const auto corpus = random_corpus(rng, 5);
    MiningConfig cfg;
    cfg.tau = 0.4;
    cfg.min_nodes = 2;
    cfg.closed_only = false;
    cfg.max_pattern_edges = 4;
    const auto frequent = mine(corpus, cfg);
    const auto fast = unique_counts(frequent, corpus);
    for (std::size_t i = 0; i < frequent.size(); ++i) {
      EXPECT_EQ(fast[i], brute_force_unique_count(frequent[i], frequent, corpus)) << frequent[i].code.to_string();
      EXPECT_LE(fast[i], frequent[i].support);
    }
  }
}

TEST(ReducerProperty, SubsetKeepsMaximalAndIsStable) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto corpus = random_corpus(rng, 8);
    for (bool closed : {true, false}) {
      MiningConfig cfg;
      cfg.tau = 0.3;
      cfg.min_nodes = 2;
      cfg.closed_only = closed;
      cfg.max_pattern_edges = 5;
      const auto frequent = mine(corpus, cfg);
      const auto reduced = reduce_frequent_set(frequent, corpus, cfg);
      const auto in = codes(frequent);
      for (const auto& p : reduced) EXPECT_TRUE(in.count(p.code.to_string()));
      for (const auto& p : frequent) {
        const bool maximal = std::none_of(frequent.begin(), frequent.end(),
                                          [&](const Pattern& q) { return is_strict_subpattern(p, q); });
        if (maximal) EXPECT_TRUE(codes(reduced).count(p.code.to_string())) << p.code.to_string();
      }
      EXPECT_TRUE(std::is_sorted(reduced.begin(), reduced.end(), pattern_order));
      EXPECT_EQ(codes(reduce_frequent_set(reduced, corpus, cfg)), codes(reduced));
      EXPECT_EQ(reduced, reduce_frequent_set_serial(frequent, corpus, cfg));
    }
  }
}
