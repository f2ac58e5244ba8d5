#include "opmine/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "opmine/errors.hpp"

namespace opmine {

OpLabel::OpLabel(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw ParseError("operation label must be non-empty");
}

NodeId LabeledDigraph::add_node(OpLabel label, std::string name) {
  if (label.empty()) throw ParseError("operation label must be non-empty");
  const NodeId id = node_count();
  nodes_.push_back(GraphNode{id, std::move(label), std::move(name)});
  return id;
}

void LabeledDigraph::add_edge(NodeId src, NodeId dst, EdgeKind kind) {
  if (src < 0 || src >= node_count() || dst < 0 || dst >= node_count()) {
    throw ReferenceError("edge [" + std::to_string(src) + "," + std::to_string(dst) +
                         "] references a node outside 0.." + std::to_string(node_count() - 1));
  }
  edges_.push_back(GraphEdge{src, dst, kind});
}

int LabeledDigraph::data_edge_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const GraphEdge& e) {
    return e.kind == EdgeKind::kData;
  }));
}

ArcView::ArcView(const LabeledDigraph& g)
    : out_(static_cast<std::size_t>(g.node_count())), in_(static_cast<std::size_t>(g.node_count())) {
  for (const auto& e : g.edges()) {
    if (e.kind != EdgeKind::kData) continue;
    out_[static_cast<std::size_t>(e.src)].push_back(e.dst);
    in_[static_cast<std::size_t>(e.dst)].push_back(e.src);
  }
  auto normalize = [](std::vector<NodeId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  for (auto& v : out_) normalize(v);
  for (auto& v : in_) normalize(v);
}

bool ArcView::has_arc(NodeId u, NodeId v) const {
  const auto& o = out(u);
  return std::binary_search(o.begin(), o.end(), v);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a simple combination
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::vector<std::uint64_t> wl_colors(const LabeledDigraph& g, int rounds) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::uint64_t> color(n);
  for (std::size_t i = 0; i < n; ++i) color[i] = fnv1a(g.nodes()[i].label.str());

  std::vector<std::vector<NodeId>> out(n), in(n);
  for (const auto& e : g.edges()) {
    if (e.kind != EdgeKind::kData) continue;
    out[static_cast<std::size_t>(e.src)].push_back(e.dst);
    in[static_cast<std::size_t>(e.dst)].push_back(e.src);
  }

  std::vector<std::uint64_t> next(n), buf;
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t h = mix64(color[i], 0x51);
      for (int side = 0; side < 2; ++side) {
        const auto& nb = side == 0 ? out[i] : in[i];
        buf.clear();
        for (NodeId v : nb) buf.push_back(color[static_cast<std::size_t>(v)]);
        std::sort(buf.begin(), buf.end());
        h = mix64(h, 0xa0 + static_cast<std::uint64_t>(side));
        for (auto c : buf) h = mix64(h, c);
      }
      next[i] = h;
    }
    color.swap(next);
  }
  return color;
}

}  // namespace

std::uint64_t wl_hash(const LabeledDigraph& g, int rounds) {
  if (rounds < 1) rounds = 1;
  auto colors = wl_colors(g, rounds);
  std::sort(colors.begin(), colors.end());
  std::uint64_t h = mix64(static_cast<std::uint64_t>(g.node_count()),
                          static_cast<std::uint64_t>(g.data_edge_count()));
  for (auto c : colors) h = mix64(h, c);
  return h;
}

bool is_isomorphic(const LabeledDigraph& g, const LabeledDigraph& h) {
  if (g.node_count() != h.node_count() || g.data_edge_count() != h.data_edge_count()) return false;
  const int n = g.node_count();
  if (n == 0) return true;

  const int rounds = std::max(1, std::min(n, 8));
  const auto cg = wl_colors(g, rounds);
  const auto ch = wl_colors(h, rounds);
  {
    auto a = cg, b = ch;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }

  // Arc multiplicities per ordered pair.
  using Mult = std::vector<std::unordered_map<NodeId, int>>;
  auto multiplicities = [](const LabeledDigraph& x, Mult& out, Mult& in) {
    out.assign(static_cast<std::size_t>(x.node_count()), {});
    in.assign(static_cast<std::size_t>(x.node_count()), {});
    for (const auto& e : x.edges()) {
      if (e.kind != EdgeKind::kData) continue;
      ++out[static_cast<std::size_t>(e.src)][e.dst];
      ++in[static_cast<std::size_t>(e.dst)][e.src];
    }
  };
  Mult gout, gin, hout, hin;
  multiplicities(g, gout, gin);
  multiplicities(h, hout, hin);
  auto count = [](const Mult& m, NodeId a, NodeId b) {
    const auto& row = m[static_cast<std::size_t>(a)];
    auto it = row.find(b);
    return it == row.end() ? 0 : it->second;
  };

  // Visit g in BFS order so each new node tends to have mapped neighbors.
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(n));
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (NodeId s = 0; s < n; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::deque<NodeId> q{s};
      seen[static_cast<std::size_t>(s)] = 1;
      while (!q.empty()) {
        NodeId u = q.front();
        q.pop_front();
        order.push_back(u);
        for (const Mult* m : {&gout, &gin}) {
          std::vector<NodeId> nb;
          for (const auto& [v, c] : (*m)[static_cast<std::size_t>(u)]) nb.push_back(v);
          std::sort(nb.begin(), nb.end());
          for (NodeId v : nb) {
            if (!seen[static_cast<std::size_t>(v)]) {
              seen[static_cast<std::size_t>(v)] = 1;
              q.push_back(v);
            }
          }
        }
      }
    }
  }

  std::unordered_map<std::uint64_t, std::vector<NodeId>> by_color;
  for (NodeId v = 0; v < n; ++v) by_color[ch[static_cast<std::size_t>(v)]].push_back(v);

  std::vector<NodeId> fwd(static_cast<std::size_t>(n), -1);
  std::vector<NodeId> inv(static_cast<std::size_t>(n), -1);

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const NodeId u = order[depth];
    for (NodeId cand : by_color[cg[static_cast<std::size_t>(u)]]) {
      if (inv[static_cast<std::size_t>(cand)] >= 0) continue;
      if (g.label(u) != h.label(cand)) continue;
      if (count(gout, u, u) != count(hout, cand, cand)) continue;
      bool ok = true;
      for (const auto& [w, c] : gout[static_cast<std::size_t>(u)]) {
        const NodeId fw = fwd[static_cast<std::size_t>(w)];
        if (w != u && fw >= 0 && count(hout, cand, fw) != c) { ok = false; break; }
      }
      if (ok) {
        for (const auto& [w, c] : gin[static_cast<std::size_t>(u)]) {
          const NodeId fw = fwd[static_cast<std::size_t>(w)];
          if (w != u && fw >= 0 && count(hout, fw, cand) != c) { ok = false; break; }
        }
      }
      // Arcs present in h between cand and mapped nodes must exist in g too.
      if (ok) {
        for (const Mult* m : {&hout, &hin}) {
          for (const auto& [x, c] : (*m)[static_cast<std::size_t>(cand)]) {
            const NodeId w = inv[static_cast<std::size_t>(x)];
            if (x == cand || w < 0) continue;
            const int expect = m == &hout ? count(gout, u, w) : count(gin, u, w);
            if (expect != c) { ok = false; break; }
          }
          if (!ok) break;
        }
      }
      if (!ok) continue;
      fwd[static_cast<std::size_t>(u)] = cand;
      inv[static_cast<std::size_t>(cand)] = u;
      if (extend(depth + 1)) return true;
      fwd[static_cast<std::size_t>(u)] = -1;
      inv[static_cast<std::size_t>(cand)] = -1;
    }
    return false;
  };
  return extend(0);
}

bool is_weakly_connected(const LabeledDigraph& g) {
  const int n = g.node_count();
  if (n == 0) return false;
  ArcView view(g);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (const auto* nb : {&view.out(u), &view.in(u)}) {
      for (NodeId v : *nb) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++reached;
          stack.push_back(v);
        }
      }
    }
  }
  return reached == n;
}

namespace {

// Backtracking monomorphism search. Pattern nodes are matched in BFS order;
// every node after the first is anchored to an earlier adjacent node so
// candidates come from that anchor's neighborhood.
class SubgraphMatcher {
 public:
  SubgraphMatcher(const LabeledDigraph& pattern, const LabeledDigraph& graph)
      : pattern_(pattern), graph_(graph), pview_(pattern), gview_(graph) {
    if (pattern.empty() || !is_weakly_connected(pattern)) {
      throw StructuralError("pattern must be non-empty and connected");
    }
    std::unordered_map<std::string, int> intern;
    for (const auto& nd : pattern.nodes()) {
      plabel_.push_back(intern.try_emplace(nd.label.str(), static_cast<int>(intern.size())).first->second);
    }
    glabel_.reserve(static_cast<std::size_t>(graph.node_count()));
    std::vector<int> have(intern.size(), 0);
    for (const auto& nd : graph.nodes()) {
      auto it = intern.find(nd.label.str());
      glabel_.push_back(it == intern.end() ? -1 : it->second);
      if (it != intern.end()) ++have[static_cast<std::size_t>(it->second)];
    }
    std::vector<int> need(intern.size(), 0);
    for (int l : plabel_) ++need[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < need.size(); ++i) {
      if (need[i] > have[i]) feasible_ = false;
    }
    build_order();
  }

  // Calls `visit` for every embedding; stops when it returns false.
  void run(const std::function<bool(const std::vector<NodeId>&)>& visit) {
    if (!feasible_) return;
    map_.assign(order_.size(), -1);
    used_.assign(static_cast<std::size_t>(graph_.node_count()), 0);
    visit_ = &visit;
    stop_ = false;
    const NodeId root = order_[0];
    for (NodeId v = 0; v < graph_.node_count() && !stop_; ++v) {
      if (glabel_[static_cast<std::size_t>(v)] != plabel_[static_cast<std::size_t>(root)]) continue;
      if (!consistent(root, v)) continue;
      assign(root, v);
      extend(1);
      unassign(root, v);
    }
  }

 private:
  void build_order() {
    const int n = pattern_.node_count();
    // Start at the highest-degree node to constrain early.
    NodeId start = 0;
    std::size_t best = 0;
    for (NodeId u = 0; u < n; ++u) {
      const std::size_t d = pview_.out(u).size() + pview_.in(u).size();
      if (d > best) {
        best = d;
        start = u;
      }
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    anchor_.assign(static_cast<std::size_t>(n), {-1, false});
    std::deque<NodeId> q{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop_front();
      order_.push_back(u);
      for (NodeId v : pview_.out(u)) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          anchor_[static_cast<std::size_t>(v)] = {u, true};
          q.push_back(v);
        }
      }
      for (NodeId v : pview_.in(u)) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          anchor_[static_cast<std::size_t>(v)] = {u, false};
          q.push_back(v);
        }
      }
    }
  }

  bool consistent(NodeId p, NodeId g) const {
    if (pview_.has_arc(p, p) && !gview_.has_arc(g, g)) return false;
    for (NodeId q : pview_.out(p)) {
      const NodeId gq = map_[static_cast<std::size_t>(q)];
      if (q != p && gq >= 0 && !gview_.has_arc(g, gq)) return false;
    }
    for (NodeId q : pview_.in(p)) {
      const NodeId gq = map_[static_cast<std::size_t>(q)];
      if (q != p && gq >= 0 && !gview_.has_arc(gq, g)) return false;
    }
    return true;
  }

  void assign(NodeId p, NodeId g) {
    map_[static_cast<std::size_t>(p)] = g;
    used_[static_cast<std::size_t>(g)] = 1;
  }
  void unassign(NodeId p, NodeId g) {
    map_[static_cast<std::size_t>(p)] = -1;
    used_[static_cast<std::size_t>(g)] = 0;
  }

  void extend(std::size_t depth) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!(*visit_)(map_)) stop_ = true;
      return;
    }
    const NodeId p = order_[depth];
    const auto [anchor, outward] = anchor_[static_cast<std::size_t>(p)];
    const NodeId ga = map_[static_cast<std::size_t>(anchor)];
    const auto& cands = outward ? gview_.out(ga) : gview_.in(ga);
    for (NodeId v : cands) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      if (glabel_[static_cast<std::size_t>(v)] != plabel_[static_cast<std::size_t>(p)]) continue;
      if (!consistent(p, v)) continue;
      assign(p, v);
      extend(depth + 1);
      unassign(p, v);
      if (stop_) return;
    }
  }

  const LabeledDigraph& pattern_;
  const LabeledDigraph& graph_;
  ArcView pview_;
  ArcView gview_;
  std::vector<int> plabel_;
  std::vector<int> glabel_;
  bool feasible_ = true;
  std::vector<NodeId> order_;
  std::vector<std::pair<NodeId, bool>> anchor_;
  std::vector<NodeId> map_;
  std::vector<char> used_;
  const std::function<bool(const std::vector<NodeId>&)>* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace

OccurrenceMap enumerate_embeddings(const LabeledDigraph& pattern, const LabeledDigraph& graph) {
  OccurrenceMap result;
  SubgraphMatcher matcher(pattern, graph);
  std::vector<NodeId> key;
  matcher.run([&](const std::vector<NodeId>& mapping) {
    key = mapping;
    std::sort(key.begin(), key.end());
    result.try_emplace(key, Embedding{mapping});
    return true;
  });
  return result;
}

bool contains_subgraph(const LabeledDigraph& pattern, const LabeledDigraph& graph) {
  bool found = false;
  SubgraphMatcher matcher(pattern, graph);
  matcher.run([&](const std::vector<NodeId>&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace opmine
