#include "support/fixtures.hpp"

#include <cstdio>
#include <random>
#include <string>

#include "support/generators.hpp"

namespace opmine::testing {

std::vector<LabeledDigraph> abcd_corpus() {
  return {make_chain({"A", "B", "C", "D"}, "G1"), make_chain({"A", "B", "C", "D"}, "G2"),
          make_chain({"A", "B", "C", "D"}, "G3"), make_chain({"A", "B", "C"}, "G4")};
}

namespace {

std::string chain_label(int i) { return "L" + std::to_string(i); }

}  // namespace

std::vector<LabeledDigraph> fragment_anomaly_corpus() {
  std::vector<LabeledDigraph> out;
  std::vector<std::string> chain;
  for (int i = 0; i < kAnomalyChainLength; ++i) chain.push_back(chain_label(i));
  std::mt19937_64 rng(2024);
  for (int c = 0; c < 6; ++c) {
    auto g = make_chain(chain, "full" + std::to_string(c));
    // a few extra nodes hanging off the chain
    for (int x = 0; x < c % 3 + 1; ++x) {
      const NodeId v = g.add_node(OpLabel("Extra"));
      g.add_edge(v, (x * 7 + c) % kAnomalyChainLength);
    }
    out.push_back(std::move(g));
  }
  {
    LabeledDigraph g;
    g.set_graph_id("pieces");
    for (int f = 0; f < 5; ++f) {
      NodeId prev = -1;
      for (int i = f * 6; i < f * 6 + 4; ++i) {
        const NodeId v = g.add_node(OpLabel(chain_label(i)));
        if (prev >= 0) g.add_edge(prev, v);
        prev = v;
      }
    }
    out.push_back(std::move(g));
  }
  for (int k = 0; k < 3; ++k) {
    auto g = random_connected_graph(rng, 8, 3, 0.2);
    LabeledDigraph renamed;
    renamed.set_graph_id("noise" + std::to_string(k));
    for (const auto& n : g.nodes()) renamed.add_node(OpLabel("N" + n.label.str()));
    for (const auto& e : g.edges()) renamed.add_edge(e.src, e.dst, e.kind);
    out.push_back(std::move(renamed));
  }
  return out;
}

LabeledDigraph planted_chain_pattern_graph(int k) {
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back("P" + std::to_string(i));
  return make_chain(labels);
}

LabeledDigraph planted_copies_graph(int p, int k, int m, const std::string& id) {
  LabeledDigraph g;
  g.set_graph_id(id);
  std::vector<NodeId> heads;
  for (int c = 0; c < p; ++c) {
    NodeId prev = -1;
    for (int i = 0; i < k; ++i) {
      const NodeId v = g.add_node(OpLabel("P" + std::to_string(i)));
      if (prev >= 0) g.add_edge(prev, v);
      if (i == 0) heads.push_back(v);
      prev = v;
    }
  }
  NodeId prev = -1;
  for (int f = 0; f < m; ++f) {
    const NodeId v = g.add_node(OpLabel("F"));
    if (prev >= 0) g.add_edge(prev, v);
    if (!heads.empty()) g.add_edge(v, heads[static_cast<std::size_t>(f) % heads.size()]);
    prev = v;
  }
  return g;
}

}  // namespace opmine::testing

namespace opmine::testing {

Corpus corpus_of(std::vector<LabeledDigraph> graphs, int per_repo) {
  CorpusManifest m;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].graph_id().empty()) graphs[i].set_graph_id("g" + std::to_string(i));
    ManifestEntry e;
    e.graph_id = graphs[i].graph_id();
    if (per_repo > 0) e.repo_id = "repo" + std::to_string(i / static_cast<std::size_t>(per_repo));
    m.entries.push_back(std::move(e));
  }
  return Corpus(std::move(m), std::move(graphs));
}

Corpus planted_fraction_corpus(int n, int k, int m) {
  std::vector<LabeledDigraph> graphs;
  for (int g = 0; g < n; ++g) {
    char id[16];
    std::snprintf(id, sizeof id, "planted%03d", g);
    LabeledDigraph h;
    h.set_graph_id(id);
    NodeId prev = -1;
    for (int i = 0; i < k; ++i) {
      const NodeId v = h.add_node(OpLabel("P" + std::to_string(i)));
      if (prev >= 0) h.add_edge(prev, v);
      prev = v;
    }
    for (int f = 0; f < m; ++f) {
      const NodeId v = h.add_node(OpLabel("F" + std::to_string(g) + "_" + std::to_string(f)));
      h.add_edge(v, f % k);
    }
    graphs.push_back(std::move(h));
  }
  return corpus_of(std::move(graphs));
}

}  // namespace opmine::testing
