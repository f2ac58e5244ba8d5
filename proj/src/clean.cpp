#include "opmine/clean.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "opmine/errors.hpp"
#include "opmine/ingest.hpp"

namespace opmine {

namespace {

bool contains(const std::vector<std::string>& list, std::string_view s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

std::string_view first_segment(std::string_view name) {
  const auto slash = name.find('/');
  return slash == std::string_view::npos ? name : name.substr(0, slash);
}

bool scope_matches(std::string_view segment, std::string_view prefix) {
  if (segment == prefix) return true;
  return segment.size() > prefix.size() + 1 && segment.substr(0, prefix.size()) == prefix &&
         segment[prefix.size()] == '_';
}

}  // namespace

void CleaningRules::validate() const {
  auto check = [](const std::vector<std::string>& list, const char* what) {
    if (list.empty()) throw ConfigError(std::string("cleaning rule list '") + what + "' must not be empty");
  };
  check(optimizer_scope_prefixes, "optimizer_scope_prefixes");
  check(aux_op_labels, "aux_op_labels");
  check(aux_name_suffixes, "aux_name_suffixes");
  check(aux_scopes, "aux_scopes");
  check(collapse_op_labels, "collapse_op_labels");
  check(variable_op_labels, "variable_op_labels");
}

CleaningRules parse_cleaning_rules(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("cleaning rules are not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("cleaning rules must be a JSON object");
  CleaningRules rules;
  const std::pair<const char*, std::vector<std::string>*> fields[] = {
      {"optimizer_scope_prefixes", &rules.optimizer_scope_prefixes},
      {"aux_op_labels", &rules.aux_op_labels},
      {"aux_name_suffixes", &rules.aux_name_suffixes},
      {"aux_scopes", &rules.aux_scopes},
      {"collapse_op_labels", &rules.collapse_op_labels},
      {"variable_op_labels", &rules.variable_op_labels},
  };
  for (const auto& [key, value] : doc.items()) {
    auto it = std::find_if(std::begin(fields), std::end(fields), [&](const auto& f) { return key == f.first; });
    if (it == std::end(fields)) throw ConfigError("unknown cleaning rule '" + key + "'");
    if (!value.is_array()) throw ConfigError("cleaning rule '" + key + "' must be a list of strings");
    it->second->clear();
    for (const auto& item : value) {
      if (!item.is_string()) throw ConfigError("cleaning rule '" + key + "' must be a list of strings");
      it->second->push_back(item.get<std::string>());
    }
  }
  rules.validate();
  return rules;
}

CleaningRules load_cleaning_rules(const std::filesystem::path& path) {
  return parse_cleaning_rules(read_text_file(path));
}

bool is_optimizer_node(const GraphNode& n, const CleaningRules& rules) {
  const auto seg = first_segment(n.name);
  return std::any_of(rules.optimizer_scope_prefixes.begin(), rules.optimizer_scope_prefixes.end(),
                     [&](const std::string& p) { return scope_matches(seg, p); });
}

bool is_aux_node(const GraphNode& n, const CleaningRules& rules) {
  const std::string& op = n.label.str();
  const std::string qualified = op + "(" + n.name + ")";
  if (contains(rules.aux_op_labels, op) || contains(rules.aux_op_labels, qualified)) return true;
  for (const auto& suffix : rules.aux_name_suffixes) {
    if (n.name.size() >= suffix.size() && n.name.compare(n.name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return true;
    }
  }
  // Only nodes inside the scope; a top-level node merely named "init" is not.
  if (n.name.find('/') == std::string::npos) return false;
  const auto seg = first_segment(n.name);
  return std::any_of(rules.aux_scopes.begin(), rules.aux_scopes.end(),
                     [&](const std::string& s) { return scope_matches(seg, s); });
}

LabeledDigraph clean_graph(const LabeledDigraph& g, const CleaningRules& rules) {
  const int n = g.node_count();
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  auto is_var = [&](int v) { return contains(rules.variable_op_labels, g.label(v).str()); };
  auto is_collapse = [&](int v) { return contains(rules.collapse_op_labels, g.label(v).str()); };

  for (int v = 0; v < n; ++v) {
    const auto& nd = g.node(v);
    if (is_optimizer_node(nd, rules) || is_aux_node(nd, rules)) alive[static_cast<std::size_t>(v)] = 0;
  }

  struct Arc {
    int src, dst;
    EdgeKind kind;
    bool forwarded = false;
  };
  std::vector<Arc> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) edges.push_back({e.src, e.dst, e.kind});
  auto live_edge = [&](const Arc& e) {
    return alive[static_cast<std::size_t>(e.src)] && alive[static_cast<std::size_t>(e.dst)];
  };

  // Assign-like nodes reading a live variable.
  std::vector<char> var_assign(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges) {
    if (e.kind == EdgeKind::kData && live_edge(e) && is_var(e.src) && is_collapse(e.dst)) {
      var_assign[static_cast<std::size_t>(e.dst)] = 1;
    }
  }

  // Initializers: producers whose live data consumers all are variable
  // assigns or other initializers. Iterated to a fixpoint.
  std::vector<char> init(static_cast<std::size_t>(n), 0);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> consumers(static_cast<std::size_t>(n), 0);
    std::vector<int> init_consumers(static_cast<std::size_t>(n), 0);
    for (const auto& e : edges) {
      if (e.kind != EdgeKind::kData || !live_edge(e) || e.src == e.dst) continue;
      ++consumers[static_cast<std::size_t>(e.src)];
      if (var_assign[static_cast<std::size_t>(e.dst)] || init[static_cast<std::size_t>(e.dst)]) {
        ++init_consumers[static_cast<std::size_t>(e.src)];
      }
    }
    for (int v = 0; v < n; ++v) {
      const auto i = static_cast<std::size_t>(v);
      if (!alive[i] || init[i] || is_var(v) || var_assign[i]) continue;
      if (consumers[i] > 0 && consumers[i] == init_consumers[i]) {
        init[i] = 1;
        changed = true;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (init[static_cast<std::size_t>(v)]) alive[static_cast<std::size_t>(v)] = 0;
  }

  // Collapse Assign/Identity nodes into an adjacent variable: the node is
  // contracted, so its out-edges leave from the variable and its other
  // in-edges arrive at it.
  for (bool changed = true; changed;) {
    changed = false;
    for (int u = 0; u < n; ++u) {
      if (!alive[static_cast<std::size_t>(u)] || !is_collapse(u)) continue;
      int target = -1;
      for (const auto& e : edges) {
        if (e.kind != EdgeKind::kData || !live_edge(e)) continue;
        if (e.dst == u && e.src != u && is_var(e.src) && (target < 0 || e.src < target)) target = e.src;
      }
      if (target < 0) {
        for (const auto& e : edges) {
          if (e.kind != EdgeKind::kData || !live_edge(e)) continue;
          if (e.src == u && e.dst != u && is_var(e.dst) && (target < 0 || e.dst < target)) target = e.dst;
        }
      }
      if (target < 0) continue;
      for (auto& e : edges) {
        if (!live_edge(e)) continue;
        if (e.src == u) {
          e.src = target;
          e.forwarded = true;
        }
        if (e.dst == u) {
          e.dst = target;
          e.forwarded = true;
        }
      }
      alive[static_cast<std::size_t>(u)] = 0;
      changed = true;
    }
  }

  LabeledDigraph out;
  out.set_graph_id(g.graph_id());
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (alive[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = out.add_node(g.label(v), g.node(v).name);
  }
  for (const auto& e : edges) {
    if (!live_edge(e)) continue;
    if (e.forwarded && e.src == e.dst) continue;
    out.add_edge(remap[static_cast<std::size_t>(e.src)], remap[static_cast<std::size_t>(e.dst)], e.kind);
  }
  return out;
}

std::vector<LabeledDigraph> clean_graphs(std::span<const LabeledDigraph> graphs, const CleaningRules& rules) {
  std::vector<LabeledDigraph> out(graphs.size());
  const long n = static_cast<long>(graphs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = clean_graph(graphs[static_cast<std::size_t>(i)], rules);
  }
  return out;
}

std::vector<LabeledDigraph> clean_graphs_serial(std::span<const LabeledDigraph> graphs, const CleaningRules& rules) {
  std::vector<LabeledDigraph> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(clean_graph(g, rules));
  return out;
}

}  // namespace opmine
