#include "opmine/ingest.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "opmine/errors.hpp"

namespace opmine {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

namespace {

std::string locate(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": malformed JSON at " + locate(text, e.byte > 0 ? e.byte - 1 : 0));
  }
}

const std::string& require_string(const json& obj, const char* key, const std::string& locus) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(locus + "." + key + ": missing");
  if (!it->is_string()) throw ParseError(locus + "." + key + ": expected text");
  return it->get_ref<const std::string&>();
}

std::string optional_string(const json& obj, const char* key, const std::string& locus) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(locus + "." + key + ": expected text");
  return it->get<std::string>();
}

}  // namespace

fs::path CorpusManifest::resolve(const ManifestEntry& e) const {
  const fs::path p(e.source_path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

CorpusManifest parse_manifest(std::string_view text, fs::path base_dir) {
  CorpusManifest m;
  m.base_dir = std::move(base_dir);
  std::set<std::string> seen;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const std::string locus = "manifest line " + std::to_string(line_no);
    json rec;
    try {
      rec = parse_json(line, locus);
      if (!rec.is_object()) throw ParseError(locus + ": expected an object");
      ManifestEntry e;
      e.graph_id = require_string(rec, "graph_id", locus);
      e.source_path = require_string(rec, "path", locus);
      e.repo_id = optional_string(rec, "repo_id", locus);
      e.description = optional_string(rec, "description", locus);
      e.readme_text = optional_string(rec, "readme", locus);
      if (auto it = rec.find("tags"); it != rec.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError(locus + ".tags: expected an array");
        for (const auto& t : *it) {
          if (!t.is_string()) throw ParseError(locus + ".tags: expected text items");
          e.task_tags.push_back(t.get<std::string>());
        }
      }
      if (e.graph_id.empty()) throw ParseError(locus + ".graph_id: empty");
      if (!seen.insert(e.graph_id).second) {
        throw ManifestError(locus + ": duplicate graph_id '" + e.graph_id + "'");
      }
      m.entries.push_back(std::move(e));
    } catch (const ManifestError&) {
      throw;
    } catch (const ParseError& e) {
      throw ManifestError(e.what());
    }
    if (end == text.size()) break;
  }
  return m;
}

CorpusManifest read_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw ManifestError("manifest " + path.string() + " does not exist");
  return parse_manifest(read_text_file(path), path.parent_path());
}

std::string serialize_manifest(const CorpusManifest& manifest) {
  std::string out;
  for (const auto& e : manifest.entries) {
    json rec = json::object();
    rec["graph_id"] = e.graph_id;
    rec["path"] = e.source_path;
    rec["repo_id"] = e.repo_id;
    rec["description"] = e.description;
    rec["readme"] = e.readme_text;
    rec["tags"] = e.task_tags;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_manifest(const CorpusManifest& manifest, const fs::path& path) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  CorpusManifest rebased = manifest;
  for (auto& e : rebased.entries) {
    const fs::path abs = fs::absolute(manifest.resolve(e)).lexically_normal();
    e.source_path = abs.lexically_relative(fs::absolute(dir).lexically_normal()).generic_string();
    if (e.source_path.empty()) e.source_path = abs.generic_string();
  }
  write_text_file(path, serialize_manifest(rebased));
}

LabeledDigraph parse_canonical(std::string_view doc) {
  const json root = parse_json(doc, "graph document");
  if (!root.is_object()) throw ParseError("graph document: expected an object");
  LabeledDigraph g(optional_string(root, "id", "graph"));

  auto nodes = root.find("nodes");
  if (nodes == root.end() || !nodes->is_array()) throw ParseError("graph.nodes: expected an array");
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    const auto& nd = (*nodes)[i];
    const std::string locus = "graph.nodes[" + std::to_string(i) + "]";
    if (!nd.is_object()) throw ParseError(locus + ": expected an object");
    const std::string& op = require_string(nd, "op", locus);
    if (op.empty()) throw ParseError(locus + ".op: empty");
    g.add_node(OpLabel(op), optional_string(nd, "name", locus));
  }

  auto edges = root.find("edges");
  if (edges == root.end() || !edges->is_array()) throw ParseError("graph.edges: expected an array");
  for (std::size_t i = 0; i < edges->size(); ++i) {
    const auto& e = (*edges)[i];
    const std::string locus = "graph.edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw ParseError(locus + ": expected [src, dst] or [src, dst, kind]");
    if (!e[0].is_number_integer() || !e[1].is_number_integer()) throw ParseError(locus + ": indices must be integers");
    EdgeKind kind = EdgeKind::kData;
    if (e.size() == 3) {
      if (!e[2].is_string()) throw ParseError(locus + "[2]: expected \"control\" or \"data\"");
      const auto& k = e[2].get_ref<const std::string&>();
      if (k == "control") {
        kind = EdgeKind::kControl;
      } else if (k != "data") {
        throw ParseError(locus + "[2]: unknown edge kind '" + k + "'");
      }
    }
    const auto src = e[0].get<long long>();
    const auto dst = e[1].get<long long>();
    if (src < 0 || dst < 0 || src >= g.node_count() || dst >= g.node_count()) {
      throw ReferenceError(locus + ": [" + std::to_string(src) + "," + std::to_string(dst) +
                           "] references a node outside 0.." + std::to_string(g.node_count() - 1));
    }
    g.add_edge(static_cast<NodeId>(src), static_cast<NodeId>(dst), kind);
  }
  return g;
}

std::string serialize_canonical(const LabeledDigraph& g) {
  json root = json::object();
  root["id"] = g.graph_id();
  json nodes = json::array();
  for (const auto& nd : g.nodes()) nodes.push_back({{"name", nd.name}, {"op", nd.label.str()}});
  json edges = json::array();
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::kControl) {
      edges.push_back({e.src, e.dst, "control"});
    } else {
      edges.push_back({e.src, e.dst});
    }
  }
  root["nodes"] = std::move(nodes);
  root["edges"] = std::move(edges);
  return root.dump();
}

namespace {

enum class Tok { kWord, kString, kLBrace, kRBrace, kLAngle, kRAngle, kLBracket, kRBracket, kColon, kComma, kSemi, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int line = 0;
};

class TextFormatLexer {
 public:
  explicit TextFormatLexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      t.kind = k;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '{': return single(Tok::kLBrace);
      case '}': return single(Tok::kRBrace);
      case '<': return single(Tok::kLAngle);
      case '>': return single(Tok::kRAngle);
      case '[': return single(Tok::kLBracket);
      case ']': return single(Tok::kRBracket);
      case ':': return single(Tok::kColon);
      case ',': return single(Tok::kComma);
      case ';': return single(Tok::kSemi);
      case '"':
      case '\'': return string_token(c);
      default: break;
    }
    if (is_word_char(c)) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && is_word_char(src_[pos_])) ++pos_;
      t.kind = Tok::kWord;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    throw ParseError("GraphDef text line " + std::to_string(line_) + ": unexpected character '" + std::string(1, c) + "'");
  }

 private:
  static bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '+';
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Token string_token(char quote) {
    Token t;
    t.kind = Tok::kString;
    t.line = line_;
    ++pos_;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw ParseError("GraphDef text line " + std::to_string(t.line) + ": unterminated string");
      }
      char c = src_[pos_++];
      if (c == quote) break;
      if (c != '\\') {
        t.text += c;
        continue;
      }
      if (pos_ >= src_.size()) throw ParseError("GraphDef text line " + std::to_string(t.line) + ": dangling escape");
      c = src_[pos_++];
      switch (c) {
        case 'n': t.text += '\n'; break;
        case 't': t.text += '\t'; break;
        case 'r': t.text += '\r'; break;
        case 'x': {
          int v = 0;
          int digits = 0;
          while (digits < 2 && pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 16 + std::stoi(std::string(1, src_[pos_++]), nullptr, 16);
            ++digits;
          }
          t.text += static_cast<char>(v);
          break;
        }
        default:
          if (c >= '0' && c <= '7') {
            int v = c - '0';
            for (int k = 0; k < 2 && pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '7'; ++k) {
              v = v * 8 + (src_[pos_++] - '0');
            }
            t.text += static_cast<char>(v);
          } else {
            t.text += c;
          }
      }
    }
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

struct NodeDef {
  std::string name;
  std::string op;
  std::vector<std::string> inputs;
  int line = 0;
};

class GraphDefParser {
 public:
  explicit GraphDefParser(std::string_view text) : lex_(text) { advance(); }

  std::vector<NodeDef> parse() {
    std::vector<NodeDef> nodes;
    while (cur_.kind != Tok::kEnd) {
      const Token field = expect_word();
      if (field.text == "node") {
        nodes.push_back(parse_node(field.line));
      } else {
        skip_value();
      }
    }
    return nodes;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("GraphDef text line " + std::to_string(cur_.line) + ": " + what);
  }

  void advance() { cur_ = lex_.next(); }

  Token expect_word() {
    if (cur_.kind != Tok::kWord) fail("expected a field name, got '" + cur_.text + "'");
    Token t = cur_;
    advance();
    return t;
  }

  // After a field name: `{...}`, `<...>`, `: {...}`, `: scalar`, `: [..]`.
  void skip_value() {
    if (cur_.kind == Tok::kColon) {
      advance();
      if (cur_.kind == Tok::kLBracket) {
        skip_list();
        return;
      }
      if (cur_.kind != Tok::kLBrace && cur_.kind != Tok::kLAngle) {
        read_scalar();
        return;
      }
    }
    if (cur_.kind == Tok::kLBrace || cur_.kind == Tok::kLAngle) {
      skip_message();
      return;
    }
    fail("expected a value");
  }

  void skip_message() {
    const Tok close = cur_.kind == Tok::kLBrace ? Tok::kRBrace : Tok::kRAngle;
    advance();
    while (cur_.kind != close) {
      if (cur_.kind == Tok::kEnd) fail("unterminated block");
      expect_word();
      skip_value();
      if (cur_.kind == Tok::kComma || cur_.kind == Tok::kSemi) advance();
    }
    advance();
  }

  void skip_list() {
    advance();
    while (cur_.kind != Tok::kRBracket) {
      if (cur_.kind == Tok::kEnd) fail("unterminated list");
      if (cur_.kind == Tok::kLBrace || cur_.kind == Tok::kLAngle) {
        skip_message();
      } else {
        read_scalar();
      }
      if (cur_.kind == Tok::kComma) advance();
    }
    advance();
  }

  std::string read_scalar() {
    if (cur_.kind == Tok::kString) {
      std::string s;
      while (cur_.kind == Tok::kString) {
        s += cur_.text;
        advance();
      }
      return s;
    }
    if (cur_.kind == Tok::kWord) {
      std::string s = cur_.text;
      advance();
      return s;
    }
    fail("expected a scalar value");
  }

  std::string string_field(const Token& field) {
    if (cur_.kind != Tok::kColon) fail("expected ':' after '" + field.text + "'");
    advance();
    if (cur_.kind != Tok::kString) fail("field '" + field.text + "' expects a quoted string");
    return read_scalar();
  }

  NodeDef parse_node(int line) {
    NodeDef nd;
    nd.line = line;
    if (cur_.kind == Tok::kColon) advance();
    if (cur_.kind != Tok::kLBrace && cur_.kind != Tok::kLAngle) fail("expected '{' after 'node'");
    const Tok close = cur_.kind == Tok::kLBrace ? Tok::kRBrace : Tok::kRAngle;
    advance();
    bool has_name = false;
    bool has_op = false;
    while (cur_.kind != close) {
      if (cur_.kind == Tok::kEnd) fail("unterminated node block");
      const Token field = expect_word();
      if (field.text == "name") {
        nd.name = string_field(field);
        has_name = true;
      } else if (field.text == "op") {
        nd.op = string_field(field);
        has_op = true;
      } else if (field.text == "input") {
        if (cur_.kind == Tok::kColon) {
          advance();
          if (cur_.kind == Tok::kLBracket) {
            advance();
            while (cur_.kind != Tok::kRBracket) {
              if (cur_.kind != Tok::kString) fail("input list expects quoted strings");
              nd.inputs.push_back(read_scalar());
              if (cur_.kind == Tok::kComma) advance();
            }
            advance();
          } else {
            if (cur_.kind != Tok::kString) fail("field 'input' expects a quoted string");
            nd.inputs.push_back(read_scalar());
          }
        } else {
          fail("expected ':' after 'input'");
        }
      } else {
        skip_value();
      }
      if (cur_.kind == Tok::kComma || cur_.kind == Tok::kSemi) advance();
    }
    advance();
    if (!has_name || nd.name.empty()) {
      throw ParseError("GraphDef text line " + std::to_string(line) + ": node block without a name");
    }
    if (!has_op || nd.op.empty()) {
      throw ParseError("GraphDef text line " + std::to_string(line) + ": node '" + nd.name + "' has no op");
    }
    return nd;
  }

  TextFormatLexer lex_;
  Token cur_;
};

// "^x" -> (x, control); "x:3" -> (x, data); "x" -> (x, data).
std::pair<std::string, EdgeKind> split_input(const std::string& input) {
  if (!input.empty() && input[0] == '^') return {input.substr(1), EdgeKind::kControl};
  const auto colon = input.rfind(':');
  if (colon != std::string::npos && colon + 1 < input.size() &&
      input.find_first_not_of("0123456789", colon + 1) == std::string::npos) {
    return {input.substr(0, colon), EdgeKind::kData};
  }
  return {input, EdgeKind::kData};
}

}  // namespace

LabeledDigraph parse_graphdef_text(std::string_view text, bool strict, std::string graph_id) {
  const auto defs = GraphDefParser(text).parse();
  LabeledDigraph g(std::move(graph_id));
  std::unordered_map<std::string, NodeId> by_name;
  for (const auto& nd : defs) {
    if (by_name.count(nd.name)) {
      throw ParseError("GraphDef text line " + std::to_string(nd.line) + ": duplicate node name '" + nd.name + "'");
    }
    by_name.emplace(nd.name, g.add_node(OpLabel(nd.op), nd.name));
  }
  for (const auto& nd : defs) {
    for (const auto& in : nd.inputs) {
      auto [src, kind] = split_input(in);
      if (by_name.count(src)) continue;
      if (strict) {
        throw ReferenceError("GraphDef text line " + std::to_string(nd.line) + ": node '" + nd.name +
                             "' has unresolved input '" + in + "'");
      }
      by_name.emplace(src, g.add_node(OpLabel(std::string(kExternalLabel)), src));
    }
  }
  for (const auto& nd : defs) {
    const NodeId dst = by_name.at(nd.name);
    for (const auto& in : nd.inputs) {
      auto [src, kind] = split_input(in);
      g.add_edge(by_name.at(src), dst, kind);
    }
  }
  return g;
}

LabeledDigraph load_graph_file(const fs::path& path, bool strict, const std::string& graph_id) {
  const std::string text = read_text_file(path);
  try {
    if (path.extension() == ".json") {
      LabeledDigraph g = parse_canonical(text);
      g.set_graph_id(graph_id);
      return g;
    }
    return parse_graphdef_text(text, strict, graph_id);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ReferenceError& e) {
    throw ReferenceError(path.string() + ": " + e.what());
  }
}

Corpus::Corpus(CorpusManifest manifest, std::vector<LabeledDigraph> graphs)
    : manifest_(std::move(manifest)), graphs_(std::move(graphs)) {
  if (manifest_.entries.size() != graphs_.size()) throw DataError("corpus manifest and graph list differ in size");
  for (std::size_t i = 0; i < graphs_.size(); ++i) {
    const auto& id = manifest_.entries[i].graph_id;
    if (!index_.emplace(id, i).second) throw ManifestError("duplicate graph_id '" + id + "'");
    graphs_[i].set_graph_id(id);
  }
}

const LabeledDigraph& Corpus::graph(const std::string& graph_id) const {
  auto it = index_.find(graph_id);
  if (it == index_.end()) throw DataError("unknown graph_id '" + graph_id + "'");
  return graphs_[it->second];
}

const ManifestEntry& Corpus::entry(const std::string& graph_id) const {
  auto it = index_.find(graph_id);
  if (it == index_.end()) throw DataError("unknown graph_id '" + graph_id + "'");
  return manifest_.entries[it->second];
}

int Corpus::repo_count() const {
  std::set<std::string> repos;
  for (const auto& e : manifest_.entries) repos.insert(e.repo_id);
  return static_cast<int>(repos.size());
}

double Corpus::graphs_per_repo() const {
  const int repos = repo_count();
  return repos == 0 ? 0.0 : static_cast<double>(size()) / repos;
}

std::map<std::string, int> Corpus::task_counts() const {
  std::map<std::string, int> counts;
  for (const auto& e : manifest_.entries) {
    for (const auto& t : e.task_tags) ++counts[t];
  }
  return counts;
}

Corpus Corpus::select(const std::vector<std::string>& ids) const {
  CorpusManifest m;
  m.base_dir = manifest_.base_dir;
  std::vector<LabeledDigraph> gs;
  for (const auto& id : ids) {
    m.entries.push_back(entry(id));
    gs.push_back(graph(id));
  }
  return Corpus(std::move(m), std::move(gs));
}

Corpus Corpus::with_graphs(std::vector<LabeledDigraph> graphs) const { return Corpus(manifest_, std::move(graphs)); }

Corpus load_corpus(const fs::path& manifest_path, bool strict) {
  CorpusManifest manifest = read_manifest(manifest_path);
  const auto n = static_cast<long>(manifest.entries.size());
  std::vector<std::optional<LabeledDigraph>> parsed(manifest.entries.size());
  std::vector<std::string> failures(manifest.entries.size());
  std::vector<char> hard(manifest.entries.size(), 0);

#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto& e = manifest.entries[k];
    try {
      parsed[k] = load_graph_file(manifest.resolve(e), strict, e.graph_id);
    } catch (const Error& err) {
      failures[k] = err.what();
      hard[k] = 1;
    } catch (const std::exception& err) {
      failures[k] = err.what();
      hard[k] = 1;
    }
  }

  CorpusManifest kept;
  kept.base_dir = manifest.base_dir;
  std::vector<LabeledDigraph> graphs;
  std::vector<std::string> warnings;
  for (std::size_t k = 0; k < parsed.size(); ++k) {
    if (hard[k]) {
      if (strict) throw DataError("graph '" + manifest.entries[k].graph_id + "': " + failures[k]);
      warnings.push_back("skipped graph '" + manifest.entries[k].graph_id + "': " + failures[k]);
      continue;
    }
    kept.entries.push_back(manifest.entries[k]);
    graphs.push_back(std::move(*parsed[k]));
  }
  Corpus corpus(std::move(kept), std::move(graphs));
  corpus.warnings = std::move(warnings);
  return corpus;
}

namespace {

std::string file_stem_for(const std::string& id) {
  std::string s;
  for (char c : id) {
    s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  }
  if (s.empty() || s == "." || s == "..") s = "graph";
  return s;
}

}  // namespace

fs::path write_corpus(const Corpus& corpus, const fs::path& dir) {
  fs::create_directories(dir / "graphs");
  CorpusManifest m;
  m.base_dir = dir;
  std::set<std::string> used;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    ManifestEntry e = corpus.entries()[i];
    std::string stem = file_stem_for(e.graph_id);
    for (int k = 1; !used.insert(stem).second; ++k) stem = file_stem_for(e.graph_id) + "~" + std::to_string(k);
    e.source_path = "graphs/" + stem + ".json";
    write_text_file(dir / e.source_path, serialize_canonical(corpus.graphs()[i]) + "\n");
    m.entries.push_back(std::move(e));
  }
  const fs::path manifest_path = dir / "manifest.jsonl";
  write_text_file(manifest_path, serialize_manifest(m));
  return manifest_path;
}

}  // namespace opmine
