#include "opmine/brute_force.hpp"

#include <array>
#include <set>

#include "opmine/errors.hpp"

namespace opmine {

namespace {

using Mask = std::array<std::uint64_t, 2>;

bool test(const Mask& m, int k) { return (m[static_cast<std::size_t>(k / 64)] >> (k % 64)) & 1U; }
void set_bit(Mask& m, int k) { m[static_cast<std::size_t>(k / 64)] |= std::uint64_t{1} << (k % 64); }

std::set<DfsCode> connected_subgraph_codes(const LabeledDigraph& g, std::optional<int> max_edges) {
  std::set<DfsCode> codes;
  for (const auto& nd : g.nodes()) {
    DfsCode c;
    c.root_label = nd.label;
    codes.insert(std::move(c));
  }

  std::set<std::pair<int, int>> arc_set;
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::kData && e.src != e.dst) arc_set.emplace(e.src, e.dst);
  }
  const std::vector<std::pair<int, int>> arcs(arc_set.begin(), arc_set.end());
  const int m = static_cast<int>(arcs.size());
  if (m > 128) throw OracleScaleError("too many arcs for the brute-force oracle");

  std::set<Mask> seen;
  std::vector<Mask> frontier;
  for (int k = 0; k < m; ++k) {
    Mask mask{0, 0};
    set_bit(mask, k);
    if (seen.insert(mask).second) frontier.push_back(mask);
  }
  int size = 1;
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (const auto& mask : frontier) {
      std::vector<char> touched(static_cast<std::size_t>(g.node_count()), 0);
      for (int k = 0; k < m; ++k) {
        if (test(mask, k)) {
          touched[static_cast<std::size_t>(arcs[static_cast<std::size_t>(k)].first)] = 1;
          touched[static_cast<std::size_t>(arcs[static_cast<std::size_t>(k)].second)] = 1;
        }
      }
      // Canonicalize this subset.
      LabeledDigraph sub;
      std::vector<int> remap(static_cast<std::size_t>(g.node_count()), -1);
      for (int v = 0; v < g.node_count(); ++v) {
        if (touched[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = sub.add_node(g.label(v));
      }
      for (int k = 0; k < m; ++k) {
        if (test(mask, k)) {
          const auto [u, v] = arcs[static_cast<std::size_t>(k)];
          sub.add_edge(remap[static_cast<std::size_t>(u)], remap[static_cast<std::size_t>(v)]);
        }
      }
      codes.insert(min_dfs_code(sub));

      if (max_edges && size >= *max_edges) continue;
      for (int k = 0; k < m; ++k) {
        if (test(mask, k)) continue;
        const auto [u, v] = arcs[static_cast<std::size_t>(k)];
        if (!touched[static_cast<std::size_t>(u)] && !touched[static_cast<std::size_t>(v)]) continue;
        Mask grown = mask;
        set_bit(grown, k);
        if (seen.insert(grown).second) next.push_back(grown);
      }
    }
    frontier = std::move(next);
    ++size;
  }
  return codes;
}

}  // namespace

BruteForceCatalog::BruteForceCatalog(std::span<const LabeledDigraph> corpus, std::optional<int> max_pattern_edges)
    : corpus_size_(static_cast<int>(corpus.size())), max_edges_(max_pattern_edges) {
  if (corpus.size() > static_cast<std::size_t>(kMaxGraphs)) {
    throw OracleScaleError("brute-force oracle accepts at most " + std::to_string(kMaxGraphs) + " graphs");
  }
  for (const auto& g : corpus) {
    if (g.node_count() > kMaxNodes) {
      throw OracleScaleError("brute-force oracle accepts graphs of at most " + std::to_string(kMaxNodes) + " nodes");
    }
  }
  for (const auto& g : corpus) {
    for (auto& code : connected_subgraph_codes(g, max_edges_)) ++support_[code];
  }
}

std::vector<Pattern> BruteForceCatalog::mine(const MiningConfig& cfg) const {
  cfg.validate();
  if (corpus_size_ == 0) throw ConfigError("cannot mine an empty corpus");
  if (max_edges_ && (!cfg.max_pattern_edges || *cfg.max_pattern_edges > *max_edges_)) {
    throw ConfigError("catalog was built with a smaller edge cap than requested");
  }
  const int min_sup = cfg.min_support(corpus_size_);
  std::vector<Pattern> out;
  for (const auto& [code, sup] : support_) {
    if (sup < min_sup || code.node_count() < cfg.min_nodes) continue;
    if (cfg.max_pattern_edges && code.edge_count() > *cfg.max_pattern_edges) continue;
    out.push_back(make_pattern(code, sup));
  }
  sort_patterns(out);
  return out;
}

std::vector<Pattern> brute_force_mine(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg) {
  return BruteForceCatalog(corpus, cfg.max_pattern_edges).mine(cfg);
}

}  // namespace opmine
