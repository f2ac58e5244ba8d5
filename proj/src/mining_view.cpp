#include "mining_view.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "opmine/errors.hpp"

namespace opmine::detail {

LabelTable::LabelTable(std::vector<std::string> labels) : names_(std::move(labels)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

int LabelTable::id(const std::string& label) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), label);
  if (it == names_.end() || *it != label) return -1;
  return static_cast<int>(it - names_.begin());
}

MiningGraph make_mining_graph(const LabeledDigraph& g, const LabelTable& table) {
  MiningGraph m;
  m.labels.reserve(static_cast<std::size_t>(g.node_count()));
  for (const auto& nd : g.nodes()) m.labels.push_back(table.id(nd.label.str()));
  std::set<std::pair<int, int>> arcs;
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::kData && e.src != e.dst) arcs.emplace(e.src, e.dst);
  }
  m.arcs.assign(arcs.begin(), arcs.end());
  m.adj.resize(m.labels.size());
  for (int k = 0; k < static_cast<int>(m.arcs.size()); ++k) {
    const auto [u, v] = m.arcs[static_cast<std::size_t>(k)];
    m.adj[static_cast<std::size_t>(u)].push_back({k, v, 0});
    m.adj[static_cast<std::size_t>(v)].push_back({k, u, 1});
  }
  for (auto& a : m.adj) {
    std::sort(a.begin(), a.end(), [](const Adjacent& x, const Adjacent& y) {
      return std::tie(x.other, x.dir) < std::tie(y.other, y.dir);
    });
  }
  return m;
}

int code_node_count(const Code& code) {
  int n = 0;
  for (const auto& t : code) n = std::max({n, t.from + 1, t.to + 1});
  return n;
}

MiningGraph graph_from_code(const Code& code, int root_label) {
  const int n = code.empty() ? 1 : code_node_count(code);
  MiningGraph m;
  m.labels.assign(static_cast<std::size_t>(n), root_label);
  for (const auto& t : code) {
    m.labels[static_cast<std::size_t>(t.from)] = t.from_label;
    m.labels[static_cast<std::size_t>(t.to)] = t.to_label;
    m.arcs.emplace_back(t.dir == 0 ? t.from : t.to, t.dir == 0 ? t.to : t.from);
  }
  m.adj.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < static_cast<int>(m.arcs.size()); ++k) {
    const auto [u, v] = m.arcs[static_cast<std::size_t>(k)];
    m.adj[static_cast<std::size_t>(u)].push_back({k, v, 0});
    m.adj[static_cast<std::size_t>(v)].push_back({k, u, 1});
  }
  return m;
}

std::vector<int> rightmost_path(const Code& code) {
  const int n = code_node_count(code);
  if (n == 0) return {};
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (const auto& t : code) {
    if (t.from < t.to) parent[static_cast<std::size_t>(t.to)] = t.from;
  }
  std::vector<int> path;
  for (int v = n - 1; v >= 0; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

struct Projection {
  std::vector<int> vmap;  // discovery index -> graph vertex
  std::vector<int> used;  // graph edge ids
};

bool edge_used(const Projection& p, int edge) {
  return std::find(p.used.begin(), p.used.end(), edge) != p.used.end();
}

bool vertex_mapped(const Projection& p, int v) {
  return std::find(p.vmap.begin(), p.vmap.end(), v) != p.vmap.end();
}

// Builds the minimum code tuple by tuple. With a target, stops as soon as
// the minimum is known to differ from it and reports whether they match.
bool build_min(const MiningGraph& g, Code* out, const Code* target) {
  Code code;
  if (g.edge_count() == 0) {
    if (out) *out = code;
    return !target || target->empty();
  }

  constexpr int kInf = std::numeric_limits<int>::max();
  Tuple best{0, 1, kInf, kInf, kInf};
  for (int a = 0; a < g.node_count(); ++a) {
    for (const auto& adj : g.adj[static_cast<std::size_t>(a)]) {
      Tuple t{0, 1, g.labels[static_cast<std::size_t>(a)], adj.dir,
              g.labels[static_cast<std::size_t>(adj.other)]};
      if (tuple_less(t, best)) best = t;
    }
  }
  std::vector<Projection> projs;
  for (int a = 0; a < g.node_count(); ++a) {
    if (g.labels[static_cast<std::size_t>(a)] != best.from_label) continue;
    for (const auto& adj : g.adj[static_cast<std::size_t>(a)]) {
      if (adj.dir == best.dir && g.labels[static_cast<std::size_t>(adj.other)] == best.to_label) {
        projs.push_back({{a, adj.other}, {adj.edge}});
      }
    }
  }
  auto check = [&](const Tuple& t) {
    code.push_back(t);
    if (!target) return true;
    const std::size_t k = code.size() - 1;
    return k < target->size() && (*target)[k] == t;
  };
  if (!check(best)) return false;

  std::vector<int> vlabel{best.from_label, best.to_label};
  while (static_cast<int>(code.size()) < g.edge_count()) {
    const auto path = rightmost_path(code);
    const int r = path.back();
    std::vector<Projection> next;
    Tuple chosen{};
    bool found = false;

    // Back edges from the rightmost vertex, smallest target index first.
    for (std::size_t pi = 0; pi + 1 < path.size() && !found; ++pi) {
      const int j = path[pi];
      int best_dir = kInf;
      for (const auto& p : projs) {
        const int gr = p.vmap[static_cast<std::size_t>(r)];
        const int gj = p.vmap[static_cast<std::size_t>(j)];
        for (const auto& adj : g.adj[static_cast<std::size_t>(gr)]) {
          if (adj.other == gj && !edge_used(p, adj.edge)) best_dir = std::min(best_dir, adj.dir);
        }
      }
      if (best_dir == kInf) continue;
      found = true;
      chosen = Tuple{r, j, vlabel[static_cast<std::size_t>(r)], best_dir, vlabel[static_cast<std::size_t>(j)]};
      for (const auto& p : projs) {
        const int gr = p.vmap[static_cast<std::size_t>(r)];
        const int gj = p.vmap[static_cast<std::size_t>(j)];
        for (const auto& adj : g.adj[static_cast<std::size_t>(gr)]) {
          if (adj.other == gj && adj.dir == best_dir && !edge_used(p, adj.edge)) {
            Projection q = p;
            q.used.push_back(adj.edge);
            next.push_back(std::move(q));
          }
        }
      }
    }

    // Forward edges, deepest rightmost-path vertex first.
    if (!found) {
      const int fresh = static_cast<int>(vlabel.size());
      for (auto it = path.rbegin(); it != path.rend() && !found; ++it) {
        const int i = *it;
        std::pair<int, int> best_key{kInf, kInf};
        for (const auto& p : projs) {
          const int gi = p.vmap[static_cast<std::size_t>(i)];
          for (const auto& adj : g.adj[static_cast<std::size_t>(gi)]) {
            if (vertex_mapped(p, adj.other)) continue;
            best_key = std::min(best_key, {adj.dir, g.labels[static_cast<std::size_t>(adj.other)]});
          }
        }
        if (best_key.first == kInf) continue;
        found = true;
        chosen = Tuple{i, fresh, vlabel[static_cast<std::size_t>(i)], best_key.first, best_key.second};
        for (const auto& p : projs) {
          const int gi = p.vmap[static_cast<std::size_t>(i)];
          for (const auto& adj : g.adj[static_cast<std::size_t>(gi)]) {
            if (vertex_mapped(p, adj.other)) continue;
            if (adj.dir != best_key.first || g.labels[static_cast<std::size_t>(adj.other)] != best_key.second) continue;
            Projection q = p;
            q.vmap.push_back(adj.other);
            q.used.push_back(adj.edge);
            next.push_back(std::move(q));
          }
        }
      }
      if (found) vlabel.push_back(chosen.to_label);
    }

    if (!found) throw StructuralError("graph is not connected");
    if (!check(chosen)) return false;
    projs = std::move(next);
  }
  if (out) *out = std::move(code);
  return !target || target->size() == code.size();
}

}  // namespace

Code min_code(const MiningGraph& g) {
  Code out;
  build_min(g, &out, nullptr);
  return out;
}

bool is_min(const Code& code, int root_label) {
  if (code.empty()) return true;
  return build_min(graph_from_code(code, root_label), nullptr, &code);
}

DfsCode to_public(const Code& code, int root_label, const LabelTable& table) {
  DfsCode out;
  for (const auto& t : code) {
    out.edges.push_back(DfsEdge{t.from, t.to, OpLabel(table.name(t.from_label)),
                                t.dir == 0 ? ArcDirection::kForward : ArcDirection::kReverse,
                                OpLabel(table.name(t.to_label))});
  }
  out.root_label = OpLabel(table.name(code.empty() ? root_label : code.front().from_label));
  return out;
}

Code from_public(const DfsCode& code, const LabelTable& table) {
  Code out;
  for (const auto& e : code.edges) {
    out.push_back(Tuple{e.from, e.to, table.id(e.from_label.str()), static_cast<int>(e.dir),
                        table.id(e.to_label.str())});
  }
  return out;
}

}  // namespace opmine::detail
