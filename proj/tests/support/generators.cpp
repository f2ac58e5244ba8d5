#include "generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace opmine::testing {

LabeledDigraph make_graph(std::vector<std::string> labels, std::vector<std::pair<int, int>> arcs, std::string id) {
  LabeledDigraph g(std::move(id));
  for (auto& l : labels) g.add_node(OpLabel(std::move(l)));
  for (auto [u, v] : arcs) g.add_edge(u, v);
  return g;
}

LabeledDigraph make_chain(const std::vector<std::string>& labels, std::string id) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i + 1 < static_cast<int>(labels.size()); ++i) arcs.emplace_back(i, i + 1);
  return make_graph(labels, arcs, std::move(id));
}

namespace {

std::string letter(int k) { return std::string(1, static_cast<char>('A' + k)); }

}  // namespace

LabeledDigraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec, std::string id) {
  std::uniform_int_distribution<int> nodes(spec.min_nodes, spec.max_nodes);
  std::uniform_int_distribution<int> label(0, spec.alphabet - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = nodes(rng);
  const double density = spec.min_density + (spec.max_density - spec.min_density) * unit(rng);
  LabeledDigraph g(std::move(id));
  for (int i = 0; i < n; ++i) g.add_node(OpLabel(letter(label(rng))));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) < density) {
        if (unit(rng) < 0.5) {
          g.add_edge(i, j);
        } else {
          g.add_edge(j, i);
        }
      }
    }
  }
  return g;
}

LabeledDigraph random_connected_graph(std::mt19937_64& rng, int nodes, int alphabet, double extra_density) {
  std::uniform_int_distribution<int> label(0, alphabet - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LabeledDigraph g;
  for (int i = 0; i < nodes; ++i) g.add_node(OpLabel(letter(label(rng))));
  std::set<std::pair<int, int>> arcs;
  for (int i = 1; i < nodes; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    const int p = parent(rng);
    if (unit(rng) < 0.5) {
      arcs.emplace(p, i);
    } else {
      arcs.emplace(i, p);
    }
  }
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      if (i != j && unit(rng) < extra_density) arcs.emplace(i, j);
    }
  }
  for (auto [u, v] : arcs) g.add_edge(u, v);
  return g;
}

LabeledDigraph permute(const LabeledDigraph& g, const std::vector<int>& perm) {
  const int n = g.node_count();
  std::vector<int> inverse(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
  LabeledDigraph h(g.graph_id());
  for (int k = 0; k < n; ++k) {
    const auto& nd = g.node(inverse[static_cast<std::size_t>(k)]);
    h.add_node(nd.label, nd.name);
  }
  for (const auto& e : g.edges()) {
    h.add_edge(perm[static_cast<std::size_t>(e.src)], perm[static_cast<std::size_t>(e.dst)], e.kind);
  }
  return h;
}

std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace opmine::testing
