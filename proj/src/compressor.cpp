#include "opmine/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

namespace opmine {

std::string module_label(const DfsCode& code) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(code.digest()));
  return "MODULE:" + std::string(buf);
}

namespace {

struct Work {
  LabeledDigraph graph;
  std::vector<NodeId> origin;  // original id, or -1 for a supernode
};

// Contracts each selected node-set (disjoint, in `graph` ids) into a supernode
// appended after the surviving nodes.
Work contract(const Work& w, const std::vector<std::vector<NodeId>>& sets, const std::string& label,
              std::vector<Replacement>& log, int pattern_index) {
  const int n = w.graph.node_count();
  std::vector<int> group(static_cast<std::size_t>(n), -1);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (NodeId v : sets[s]) group[static_cast<std::size_t>(v)] = static_cast<int>(s);
  }
  Work out;
  out.graph.set_graph_id(w.graph.graph_id());
  std::vector<NodeId> remap(static_cast<std::size_t>(n), -1);
  for (NodeId v = 0; v < n; ++v) {
    if (group[static_cast<std::size_t>(v)] >= 0) continue;
    remap[static_cast<std::size_t>(v)] = out.graph.add_node(w.graph.label(v), w.graph.node(v).name);
    out.origin.push_back(w.origin[static_cast<std::size_t>(v)]);
  }
  const std::size_t first_log = log.size();
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const NodeId super = out.graph.add_node(OpLabel(label));
    out.origin.push_back(-1);
    Replacement r;
    r.pattern_index = pattern_index;
    r.supernode = super;
    for (NodeId v : sets[s]) {
      r.nodes.push_back(w.origin[static_cast<std::size_t>(v)]);
      remap[static_cast<std::size_t>(v)] = super;
    }
    std::sort(r.nodes.begin(), r.nodes.end());
    log.push_back(std::move(r));
  }

  std::map<std::tuple<NodeId, NodeId, EdgeKind>, bool> merged;
  for (const auto& e : w.graph.edges()) {
    const int gs = group[static_cast<std::size_t>(e.src)];
    const int gd = group[static_cast<std::size_t>(e.dst)];
    const NodeId s = remap[static_cast<std::size_t>(e.src)];
    const NodeId d = remap[static_cast<std::size_t>(e.dst)];
    if (gs < 0 && gd < 0) {
      out.graph.add_edge(s, d, e.kind);
      continue;
    }
    if (gs == gd) continue;  // internal to one occurrence
    if (gs >= 0) ++log[first_log + static_cast<std::size_t>(gs)].boundary_edges;
    if (gd >= 0) ++log[first_log + static_cast<std::size_t>(gd)].boundary_edges;
    if (!merged.emplace(std::tuple{s, d, e.kind}, true).second) continue;
    if (gs >= 0) ++log[first_log + static_cast<std::size_t>(gs)].boundary_edges_kept;
    if (gd >= 0) ++log[first_log + static_cast<std::size_t>(gd)].boundary_edges_kept;
    out.graph.add_edge(s, d, e.kind);
  }
  return out;
}

}  // namespace

CompressionResult compress_graph(const LabeledDigraph& g, const std::vector<Pattern>& patterns) {
  std::vector<Pattern> order;
  for (const auto& p : patterns) {
    if (p.node_count >= 2) order.push_back(p);
  }
  sort_patterns(order);
  std::vector<LabeledDigraph> pgraphs;
  std::vector<std::string> labels;
  for (const auto& p : order) {
    pgraphs.push_back(p.graph());
    labels.push_back(module_label(p.code));
  }

  CompressionResult result;
  Work w;
  w.graph = g;
  for (NodeId v = 0; v < g.node_count(); ++v) w.origin.push_back(v);

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t pi = 0; pi < order.size(); ++pi) {
      std::vector<char> taken(static_cast<std::size_t>(w.graph.node_count()), 0);
      for (NodeId v = 0; v < w.graph.node_count(); ++v) {
        if (w.origin[static_cast<std::size_t>(v)] < 0) taken[static_cast<std::size_t>(v)] = 1;
      }
      std::vector<std::vector<NodeId>> chosen;
      for (const auto& [nodes, emb] : enumerate_embeddings(pgraphs[pi], w.graph)) {
        if (std::any_of(nodes.begin(), nodes.end(), [&](NodeId v) { return taken[static_cast<std::size_t>(v)]; })) {
          continue;
        }
        for (NodeId v : nodes) taken[static_cast<std::size_t>(v)] = 1;
        chosen.push_back(nodes);
      }
      if (chosen.empty()) continue;
      w = contract(w, chosen, labels[pi], result.replacements, static_cast<int>(pi));
      changed = true;
    }
  }

  result.compressed = std::move(w.graph);
  result.original_nodes = g.node_count();
  result.reduced_nodes = result.compressed.node_count();
  result.reduction_ratio =
      result.original_nodes == 0
          ? 0.0
          : static_cast<double>(result.original_nodes - result.reduced_nodes) / result.original_nodes;
  return result;
}

DistributionSummary summarize(std::vector<double> values) {
  DistributionSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double h = (static_cast<double>(values.size()) - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.min = values.front();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.max = values.back();
  return s;
}

namespace {

ReductionStats finish(std::vector<GraphReduction> rows) {
  ReductionStats stats;
  std::vector<double> ratios;
  for (const auto& r : rows) {
    ratios.push_back(r.ratio);
    if (r.ratio == 0.0) stats.zero_ratio_graphs.push_back(r.graph_id);
  }
  stats.summary = summarize(std::move(ratios));
  stats.per_graph = std::move(rows);
  return stats;
}

GraphReduction reduce_one(const LabeledDigraph& g, const std::vector<Pattern>& patterns) {
  const auto r = compress_graph(g, patterns);
  return {g.graph_id(), r.original_nodes, r.reduced_nodes, r.reduction_ratio};
}

}  // namespace

ReductionStats corpus_reduction_stats(std::span<const LabeledDigraph> corpus, const std::vector<Pattern>& patterns) {
  std::vector<GraphReduction> rows(corpus.size());
  const long n = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] = reduce_one(corpus[static_cast<std::size_t>(i)], patterns);
  }
  return finish(std::move(rows));
}

ReductionStats corpus_reduction_stats_serial(std::span<const LabeledDigraph> corpus,
                                             const std::vector<Pattern>& patterns) {
  std::vector<GraphReduction> rows;
  for (const auto& g : corpus) rows.push_back(reduce_one(g, patterns));
  return finish(std::move(rows));
}

}  // namespace opmine
