#include "opmine/miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mining_view.hpp"
#include "opmine/errors.hpp"

namespace opmine {

void MiningConfig::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1], got " + std::to_string(tau));
  if (min_nodes < 1) throw ConfigError("min_nodes must be positive");
  if (max_pattern_edges && *max_pattern_edges < 0) throw ConfigError("max_pattern_edges must be non-negative");
}

int MiningConfig::min_support(int corpus_size) const {
  // The epsilon keeps e.g. 0.7 * 10 from rounding up to 8.
  const int s = static_cast<int>(std::ceil(tau * corpus_size - 1e-9));
  return std::max(1, s);
}

Pattern make_pattern(DfsCode code, int support) {
  Pattern p;
  p.node_count = code.node_count();
  p.edge_count = code.edge_count();
  p.code = std::move(code);
  p.support = support;
  return p;
}

bool pattern_order(const Pattern& a, const Pattern& b) {
  if (a.node_count != b.node_count) return a.node_count > b.node_count;
  return a.code < b.code;
}

void sort_patterns(std::vector<Pattern>& patterns) {
  std::sort(patterns.begin(), patterns.end(), pattern_order);
}

int support(const Pattern& p, std::span<const LabeledDigraph> corpus) {
  const LabeledDigraph pg = p.graph();
  const long n = static_cast<long>(corpus.size());
  int count = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : count)
  for (long i = 0; i < n; ++i) {
    if (contains_subgraph(pg, corpus[static_cast<std::size_t>(i)])) ++count;
  }
  return count;
}

int support_serial(const Pattern& p, std::span<const LabeledDigraph> corpus) {
  const LabeledDigraph pg = p.graph();
  int count = 0;
  for (const auto& g : corpus) {
    if (contains_subgraph(pg, g)) ++count;
  }
  return count;
}

bool is_strict_subpattern(const Pattern& p, const Pattern& q) {
  if (p.edge_count >= q.edge_count || p.node_count > q.node_count) return false;
  return contains_subgraph(p.graph(), q.graph());
}

namespace {

using detail::Code;
using detail::Tuple;

struct Emb {
  int gid = 0;
  std::vector<int> vmap;
  std::vector<int> used;
};

using Extensions = std::map<Tuple, std::vector<Emb>, detail::TupleLess>;

int graph_support(const std::vector<Emb>& embs) {
  int count = 0;
  int last = -1;
  for (const auto& e : embs) {
    if (e.gid != last) {
      ++count;
      last = e.gid;
    }
  }
  return count;
}

struct Database {
  detail::LabelTable table;
  std::vector<detail::MiningGraph> graphs;
};

Database build_database(std::span<const LabeledDigraph> corpus) {
  std::vector<std::string> labels;
  for (const auto& g : corpus) {
    for (const auto& nd : g.nodes()) labels.push_back(nd.label.str());
  }
  Database db{detail::LabelTable(std::move(labels)), {}};
  db.graphs.reserve(corpus.size());
  for (const auto& g : corpus) db.graphs.push_back(detail::make_mining_graph(g, db.table));
  return db;
}

class Search {
 public:
  Search(const Database& db, const MiningConfig& cfg, int min_sup) : db_(db), cfg_(cfg), min_sup_(min_sup) {}

  // Projected embeddings are grouped by ascending graph id.
  void grow(Code& code, const std::vector<Emb>& projected, std::vector<Pattern>& out) const {
    const int nodes = detail::code_node_count(code);
    if (nodes >= cfg_.min_nodes) {
      out.push_back(make_pattern(detail::to_public(code, 0, db_.table), graph_support(projected)));
    }
    if (cfg_.max_pattern_edges && static_cast<int>(code.size()) >= *cfg_.max_pattern_edges) return;

    std::vector<int> vlabel(static_cast<std::size_t>(nodes));
    for (const auto& t : code) {
      vlabel[static_cast<std::size_t>(t.from)] = t.from_label;
      vlabel[static_cast<std::size_t>(t.to)] = t.to_label;
    }
    const auto path = detail::rightmost_path(code);
    const int r = path.back();

    Extensions ext;
    for (const auto& emb : projected) {
      const auto& g = db_.graphs[static_cast<std::size_t>(emb.gid)];
      const int gr = emb.vmap[static_cast<std::size_t>(r)];
      for (std::size_t pi = 0; pi + 1 < path.size(); ++pi) {
        const int j = path[pi];
        const int gj = emb.vmap[static_cast<std::size_t>(j)];
        for (const auto& adj : g.adj[static_cast<std::size_t>(gr)]) {
          if (adj.other != gj) continue;
          if (std::find(emb.used.begin(), emb.used.end(), adj.edge) != emb.used.end()) continue;
          Emb next = emb;
          next.used.push_back(adj.edge);
          ext[Tuple{r, j, vlabel[static_cast<std::size_t>(r)], adj.dir, vlabel[static_cast<std::size_t>(j)]}]
              .push_back(std::move(next));
        }
      }
      for (int i : path) {
        const int gi = emb.vmap[static_cast<std::size_t>(i)];
        for (const auto& adj : g.adj[static_cast<std::size_t>(gi)]) {
          if (std::find(emb.vmap.begin(), emb.vmap.end(), adj.other) != emb.vmap.end()) continue;
          Emb next = emb;
          next.vmap.push_back(adj.other);
          next.used.push_back(adj.edge);
          ext[Tuple{i, nodes, vlabel[static_cast<std::size_t>(i)], adj.dir,
                    g.labels[static_cast<std::size_t>(adj.other)]}]
              .push_back(std::move(next));
        }
      }
    }

    for (const auto& [t, embs] : ext) {
      if (graph_support(embs) < min_sup_) continue;
      code.push_back(t);
      if (detail::is_min(code, t.from_label)) grow(code, embs, out);
      code.pop_back();
    }
  }

 private:
  const Database& db_;
  const MiningConfig& cfg_;
  int min_sup_;
};

struct Prepared {
  Database db;
  int min_sup = 1;
  std::vector<std::pair<Tuple, std::vector<Emb>>> seeds;
  std::vector<Pattern> single_vertices;
};

Prepared prepare(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg) {
  cfg.validate();
  if (corpus.empty()) throw ConfigError("cannot mine an empty corpus");
  Prepared prep{build_database(corpus), cfg.min_support(static_cast<int>(corpus.size())), {}, {}};

  if (cfg.min_nodes <= 1) {
    std::vector<int> label_support(prep.db.table.size(), 0);
    for (const auto& g : prep.db.graphs) {
      std::vector<int> labels = g.labels;
      std::sort(labels.begin(), labels.end());
      labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      for (int l : labels) ++label_support[static_cast<std::size_t>(l)];
    }
    for (std::size_t l = 0; l < label_support.size(); ++l) {
      if (label_support[l] >= prep.min_sup) {
        DfsCode code;
        code.root_label = OpLabel(prep.db.table.name(static_cast<int>(l)));
        prep.single_vertices.push_back(make_pattern(std::move(code), label_support[l]));
      }
    }
  }
  if (cfg.max_pattern_edges && *cfg.max_pattern_edges == 0) return prep;

  Extensions seeds;
  for (int gid = 0; gid < static_cast<int>(prep.db.graphs.size()); ++gid) {
    const auto& g = prep.db.graphs[static_cast<std::size_t>(gid)];
    for (int a = 0; a < g.node_count(); ++a) {
      for (const auto& adj : g.adj[static_cast<std::size_t>(a)]) {
        seeds[Tuple{0, 1, g.labels[static_cast<std::size_t>(a)], adj.dir,
                    g.labels[static_cast<std::size_t>(adj.other)]}]
            .push_back(Emb{gid, {a, adj.other}, {adj.edge}});
      }
    }
  }
  for (auto& [t, embs] : seeds) {
    if (graph_support(embs) >= prep.min_sup) prep.seeds.emplace_back(t, std::move(embs));
  }
  return prep;
}

std::vector<Pattern> collect(Prepared& prep, std::vector<std::vector<Pattern>>& per_seed) {
  std::vector<Pattern> out = std::move(prep.single_vertices);
  for (auto& part : per_seed) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  sort_patterns(out);
  return out;
}

}  // namespace

std::vector<Pattern> mine_frequent(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg) {
  Prepared prep = prepare(corpus, cfg);
  const Search search(prep.db, cfg, prep.min_sup);
  std::vector<std::vector<Pattern>> per_seed(prep.seeds.size());
  const long n = static_cast<long>(prep.seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto& [seed, embs] = prep.seeds[static_cast<std::size_t>(i)];
    Code code{seed};
    if (detail::is_min(code, seed.from_label)) search.grow(code, embs, per_seed[static_cast<std::size_t>(i)]);
  }
  return collect(prep, per_seed);
}

std::vector<Pattern> mine_frequent_serial(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg) {
  Prepared prep = prepare(corpus, cfg);
  const Search search(prep.db, cfg, prep.min_sup);
  std::vector<std::vector<Pattern>> per_seed(prep.seeds.size());
  for (std::size_t i = 0; i < prep.seeds.size(); ++i) {
    const auto& [seed, embs] = prep.seeds[i];
    Code code{seed};
    if (detail::is_min(code, seed.from_label)) search.grow(code, embs, per_seed[i]);
  }
  return collect(prep, per_seed);
}

namespace {

// Canonical codes of the connected patterns obtained from g by deleting one
// arc (and an endpoint left isolated by it).
std::vector<DfsCode> one_edge_deletions(const LabeledDigraph& g) {
  std::vector<DfsCode> out;
  const int n = g.node_count();
  if (g.edges().size() == 1) {
    for (int v = 0; v < n; ++v) {
      DfsCode c;
      c.root_label = g.label(v);
      out.push_back(std::move(c));
    }
    return out;
  }
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) {
    ++degree[static_cast<std::size_t>(e.src)];
    ++degree[static_cast<std::size_t>(e.dst)];
  }
  for (std::size_t skip = 0; skip < g.edges().size(); ++skip) {
    const auto& cut = g.edges()[skip];
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    LabeledDigraph sub;
    for (int v = 0; v < n; ++v) {
      const bool isolated = (v == cut.src || v == cut.dst) && degree[static_cast<std::size_t>(v)] == 1;
      if (!isolated) remap[static_cast<std::size_t>(v)] = sub.add_node(g.label(v));
    }
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
      if (k == skip) continue;
      const auto& e = g.edges()[k];
      sub.add_edge(remap[static_cast<std::size_t>(e.src)], remap[static_cast<std::size_t>(e.dst)]);
    }
    if (is_weakly_connected(sub)) out.push_back(min_dfs_code(sub));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Pattern> closed_filter(const std::vector<Pattern>& patterns) {
  // A connected strict superpattern of equal support exists iff one with
  // exactly one more edge does: grow p inside q edge by edge, and support is
  // squeezed between support(q) and support(p) on the way. So it is enough to
  // delete each edge of every pattern and look the result up.
  std::map<DfsCode, std::size_t> index;
  std::map<std::pair<int, int>, int> size_support;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    index.emplace(patterns[k].code, k);
    ++size_support[{patterns[k].edge_count, patterns[k].support}];
  }
  const long n = static_cast<long>(patterns.size());
  std::vector<char> absorbed(patterns.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (long j = 0; j < n; ++j) {
    const auto& q = patterns[static_cast<std::size_t>(j)];
    if (q.edge_count == 0 || !size_support.count({q.edge_count - 1, q.support})) continue;
    for (const auto& code : one_edge_deletions(q.graph())) {
      const auto it = index.find(code);
      if (it == index.end() || patterns[it->second].support != q.support) continue;
#pragma omp atomic write
      absorbed[it->second] = 1;
    }
  }
  std::vector<Pattern> out;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (!absorbed[i]) out.push_back(patterns[i]);
  }
  return out;
}

std::vector<Pattern> closed_filter_exhaustive(const std::vector<Pattern>& patterns) {
  std::vector<Pattern> out;
  for (const auto& p : patterns) {
    const bool absorbed = std::any_of(patterns.begin(), patterns.end(), [&](const Pattern& q) {
      return q.support == p.support && is_strict_subpattern(p, q);
    });
    if (!absorbed) out.push_back(p);
  }
  return out;
}

std::vector<Pattern> mine(std::span<const LabeledDigraph> corpus, const MiningConfig& cfg) {
  auto frequent = mine_frequent(corpus, cfg);
  if (!cfg.closed_only) return frequent;
  return closed_filter(frequent);
}

}  // namespace opmine
