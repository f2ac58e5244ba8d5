#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "opmine/graph.hpp"

namespace opmine {

struct ManifestEntry {
  std::string graph_id;
  std::string source_path;  // as written; relative paths resolve against the manifest directory
  std::string repo_id;
  std::string description;
  std::string readme_text;
  std::vector<std::string> task_tags;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const ManifestEntry& e) const;
};

// One JSON object per line: graph_id, path, repo_id, description, readme,
// tags. Blank lines are ignored. Throws ManifestError with the line number.
CorpusManifest parse_manifest(std::string_view text, std::filesystem::path base_dir = {});
CorpusManifest read_manifest(const std::filesystem::path& path);
std::string serialize_manifest(const CorpusManifest& manifest);

// Writes `manifest` to `path`, rewriting entry paths relative to the new
// manifest directory.
void write_manifest(const CorpusManifest& manifest, const std::filesystem::path& path);

// {"id": text, "nodes": [{"name": text, "op": text}], "edges": [[src, dst] or
// [src, dst, "control"]]}. Throws ParseError (with line/field locus) or
// ReferenceError (edge to a missing node).
LabeledDigraph parse_canonical(std::string_view doc);
std::string serialize_canonical(const LabeledDigraph& g);

// Text-format GraphDef subset: `node { name: "..." op: "..." input: "..." }`
// blocks. Inputs "x", "x:k" give data edges from x, "^x" a control edge.
// Unknown fields (attr, device, ...) are skipped. Unresolved inputs throw
// ReferenceError when strict; otherwise each missing name becomes one
// "_External" placeholder node appended after the parsed nodes.
LabeledDigraph parse_graphdef_text(std::string_view text, bool strict, std::string graph_id = {});

inline constexpr std::string_view kExternalLabel = "_External";

// Dispatches on extension: .json is canonical, anything else GraphDef text.
LabeledDigraph load_graph_file(const std::filesystem::path& path, bool strict, const std::string& graph_id);

class Corpus {
 public:
  Corpus() = default;
  Corpus(CorpusManifest manifest, std::vector<LabeledDigraph> graphs);

  const CorpusManifest& manifest() const { return manifest_; }
  const std::vector<ManifestEntry>& entries() const { return manifest_.entries; }
  const std::vector<LabeledDigraph>& graphs() const { return graphs_; }
  std::size_t size() const { return graphs_.size(); }

  // Throws DataError for unknown ids.
  const LabeledDigraph& graph(const std::string& graph_id) const;
  const ManifestEntry& entry(const std::string& graph_id) const;
  bool contains(const std::string& graph_id) const { return index_.count(graph_id) > 0; }

  int repo_count() const;
  double graphs_per_repo() const;
  std::map<std::string, int> task_counts() const;

  // Subset in the order of `ids`.
  Corpus select(const std::vector<std::string>& ids) const;
  Corpus with_graphs(std::vector<LabeledDigraph> graphs) const;

  std::vector<std::string> warnings;

 private:
  CorpusManifest manifest_;
  std::vector<LabeledDigraph> graphs_;
  std::map<std::string, std::size_t> index_;
};

// Parses every graph the manifest references (in parallel). Duplicate ids
// are always a ManifestError; unreadable graph files are an error when
// strict and a recorded warning (entry dropped) otherwise.
Corpus load_corpus(const std::filesystem::path& manifest_path, bool strict);

// Writes graphs/<id>.json files plus `manifest.jsonl` under `dir`; returns
// the manifest path.
std::filesystem::path write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace opmine
