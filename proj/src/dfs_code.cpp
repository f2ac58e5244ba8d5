#include "opmine/dfs_code.hpp"

#include <cstdio>
#include <sstream>

#include "mining_view.hpp"
#include "opmine/errors.hpp"

namespace opmine {

namespace {

bool needs_escape(char c) {
  return c == '%' || c == '(' || c == ')' || c == ',' || c == ';' || c == '=' ||
         static_cast<unsigned char>(c) <= 0x20 || static_cast<unsigned char>(c) >= 0x7f;
}

}  // namespace

std::string escape_label(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  for (char c : label) {
    if (needs_escape(c)) {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", static_cast<unsigned char>(c));
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

std::string unescape_label(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%') {
      if (i + 2 >= text.size()) throw ParseError("truncated escape in label '" + std::string(text) + "'");
      const std::string hex(text.substr(i + 1, 2));
      char* end = nullptr;
      const long v = std::strtol(hex.c_str(), &end, 16);
      if (end != hex.c_str() + 2) throw ParseError("bad escape in label '" + std::string(text) + "'");
      out += static_cast<char>(v);
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

int DfsCode::node_count() const {
  if (edges.empty()) return root_label.empty() ? 0 : 1;
  int n = 0;
  for (const auto& e : edges) n = std::max({n, e.from + 1, e.to + 1});
  return n;
}

LabeledDigraph DfsCode::to_graph() const {
  LabeledDigraph g;
  const int n = node_count();
  std::vector<OpLabel> labels(static_cast<std::size_t>(n), root_label);
  for (const auto& e : edges) {
    labels[static_cast<std::size_t>(e.from)] = e.from_label;
    labels[static_cast<std::size_t>(e.to)] = e.to_label;
  }
  for (auto& l : labels) g.add_node(std::move(l));
  for (const auto& e : edges) {
    if (e.dir == ArcDirection::kForward) {
      g.add_edge(e.from, e.to);
    } else {
      g.add_edge(e.to, e.from);
    }
  }
  return g;
}

std::string DfsCode::to_string() const {
  if (edges.empty()) return "(" + escape_label(root_label.str()) + ")";
  std::ostringstream os;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (k) os << ';';
    os << '(' << e.from << ',' << e.to << ',' << escape_label(e.from_label.str()) << ','
       << (e.dir == ArcDirection::kForward ? '>' : '<') << ',' << escape_label(e.to_label.str()) << ')';
  }
  return os.str();
}

DfsCode DfsCode::parse(std::string_view text) {
  DfsCode code;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("bad DFS code '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '(') throw fail("expected '(' at offset " + std::to_string(pos));
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw fail("unterminated tuple");
    const auto body = text.substr(pos + 1, close - pos - 1);
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || body[i] == ',') {
        parts.push_back(body.substr(start, i - start));
        start = i + 1;
      }
    }
    if (parts.size() == 1) {
      if (!code.edges.empty() || pos != 0 || close + 1 != text.size()) throw fail("lone vertex must be the whole code");
      code.root_label = OpLabel(unescape_label(parts[0]));
      return code;
    }
    if (parts.size() != 5) throw fail("tuple needs 5 fields");
    DfsEdge e;
    try {
      e.from = std::stoi(std::string(parts[0]));
      e.to = std::stoi(std::string(parts[1]));
    } catch (const std::exception&) {
      throw fail("non-integer index");
    }
    e.from_label = OpLabel(unescape_label(parts[2]));
    if (parts[3] == ">") {
      e.dir = ArcDirection::kForward;
    } else if (parts[3] == "<") {
      e.dir = ArcDirection::kReverse;
    } else {
      throw fail("direction must be '>' or '<'");
    }
    e.to_label = OpLabel(unescape_label(parts[4]));
    if (e.from < 0 || e.to < 0 || e.from == e.to) throw fail("invalid indices");
    code.edges.push_back(std::move(e));
    pos = close + 1;
    if (pos < text.size()) {
      if (text[pos] != ';') throw fail("expected ';' between tuples");
      ++pos;
    }
  }
  if (code.edges.empty()) throw fail("empty code");
  code.root_label = code.edges.front().from_label;
  return code;
}

std::uint64_t DfsCode::digest() const { return fnv1a(to_string()); }

std::strong_ordering operator<=>(const DfsCode& a, const DfsCode& b) {
  const std::size_t n = std::min(a.edges.size(), b.edges.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (auto c = compare_dfs_tuples(a.edges[k], b.edges[k]); c != 0) return c;
  }
  if (a.edges.size() != b.edges.size()) return a.edges.size() <=> b.edges.size();
  return a.root_label <=> b.root_label;
}

DfsCode min_dfs_code(const LabeledDigraph& g) {
  if (g.empty()) throw StructuralError("minimum DFS code of an empty graph is undefined");
  if (!is_weakly_connected(g)) throw StructuralError("graph '" + g.graph_id() + "' is not connected");
  std::vector<std::string> labels;
  for (const auto& nd : g.nodes()) labels.push_back(nd.label.str());
  const detail::LabelTable table(std::move(labels));
  const auto view = detail::make_mining_graph(g, table);
  const auto code = detail::min_code(view);
  return detail::to_public(code, view.labels.front(), table);
}

bool is_min_dfs_code(const DfsCode& code) {
  std::vector<std::string> labels{code.root_label.str()};
  for (const auto& e : code.edges) {
    labels.push_back(e.from_label.str());
    labels.push_back(e.to_label.str());
  }
  const detail::LabelTable table(std::move(labels));
  return detail::is_min(detail::from_public(code, table), table.id(code.root_label.str()));
}

}  // namespace opmine
