#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opmine/graph.hpp"

namespace opmine {

struct CleaningRules {
  // Matched against the first name-scope segment, exactly or with a "_<suffix>"
  // (TensorFlow uniquifies repeated scopes as "gradients_1").
  std::vector<std::string> optimizer_scope_prefixes{"gradients", "Adam",          "Momentum",   "RMSProp",
                                                    "GradientDescent", "beta1_power", "beta2_power"};
  // Plain op labels, or "Op(name)" to match one op only under a given node name.
  std::vector<std::string> aux_op_labels{"Save",           "SaveV2",           "SaveSlice",    "Restore",
                                         "RestoreV2",      "ShardedFilename",  "MergeV2Checkpoints",
                                         "ScalarSummary",  "HistogramSummary", "ImageSummary", "MergeSummary",
                                         "NoOp(init)"};
  std::vector<std::string> aux_name_suffixes{"/initial_value"};
  std::vector<std::string> aux_scopes{"init", "save", "summaries"};
  std::vector<std::string> collapse_op_labels{"Assign", "Identity"};
  std::vector<std::string> variable_op_labels{"Variable", "VariableV2", "VarHandleOp"};

  // Throws ConfigError when a list is empty.
  void validate() const;
};

// JSON object whose keys override the default lists above. Unknown keys and
// non-string entries are a ConfigError.
CleaningRules parse_cleaning_rules(std::string_view json_text);
CleaningRules load_cleaning_rules(const std::filesystem::path& path);

// Applies, in order: optimizer-scope deletion, auxiliary-node deletion,
// variable-initializer deletion, and collapse of Assign/Identity nodes into
// an adjacent variable. Surviving nodes keep their relative order (ids are
// re-densified) and edges keep their order. Never throws.
LabeledDigraph clean_graph(const LabeledDigraph& g, const CleaningRules& rules = {});

std::vector<LabeledDigraph> clean_graphs(std::span<const LabeledDigraph> graphs, const CleaningRules& rules = {});
std::vector<LabeledDigraph> clean_graphs_serial(std::span<const LabeledDigraph> graphs,
                                                const CleaningRules& rules = {});

// Individual predicates, exposed for checking outputs.
bool is_optimizer_node(const GraphNode& n, const CleaningRules& rules);
bool is_aux_node(const GraphNode& n, const CleaningRules& rules);

}  // namespace opmine
