#include "opmine/pattern_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

#include "opmine/errors.hpp"
#include "opmine/ingest.hpp"

namespace opmine {

namespace {

int parse_int(std::string_view s, std::string_view field) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 0) {
    throw ParseError("field '" + std::string(field) + "' expects a non-negative integer, got '" + std::string(s) + "'");
  }
  return value;
}

Pattern checked(DfsCode code, int support, int nodes, std::optional<int> unique) {
  Pattern p = make_pattern(std::move(code), support);
  if (p.node_count != nodes) {
    throw ParseError("nodes=" + std::to_string(nodes) + " disagrees with the code, which has " +
                     std::to_string(p.node_count) + " nodes");
  }
  p.unique_count = unique;
  return p;
}

}  // namespace

std::string format_pattern_line(const Pattern& p) {
  std::string line = "support=" + std::to_string(p.support) + " nodes=" + std::to_string(p.node_count) +
                     " code=" + p.code.to_string();
  if (p.unique_count) line += " unique_count=" + std::to_string(*p.unique_count);
  return line;
}

Pattern parse_pattern_line(std::string_view line) {
  std::optional<int> support, nodes, unique;
  std::optional<DfsCode> code;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    const auto field = line.substr(pos, end - pos);
    pos = end;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError("pattern field '" + std::string(field) + "' lacks '='");
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "support") {
      support = parse_int(value, key);
    } else if (key == "nodes") {
      nodes = parse_int(value, key);
    } else if (key == "unique_count") {
      unique = parse_int(value, key);
    } else if (key == "code") {
      code = DfsCode::parse(value);
    } else {
      throw ParseError("unknown pattern field '" + std::string(key) + "'");
    }
  }
  if (!support || !nodes || !code) throw ParseError("pattern line needs support, nodes and code: '" + std::string(line) + "'");
  return checked(std::move(*code), *support, *nodes, unique);
}

std::string serialize_patterns_text(const std::vector<Pattern>& patterns) {
  std::string out;
  for (const auto& p : patterns) out += format_pattern_line(p) + '\n';
  return out;
}

std::string serialize_patterns_json(const std::vector<Pattern>& patterns) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : patterns) {
    nlohmann::json item{{"code", p.code.to_string()},
                        {"support", p.support},
                        {"nodes", p.node_count},
                        {"edges", p.edge_count}};
    if (p.unique_count) item["unique_count"] = *p.unique_count;
    arr.push_back(std::move(item));
  }
  return nlohmann::json{{"patterns", std::move(arr)}}.dump(1) + '\n';
}

std::vector<Pattern> parse_patterns(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<Pattern> out;
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("pattern file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("patterns") || !doc["patterns"].is_array()) throw ParseError("pattern file lacks a 'patterns' list");
    std::size_t k = 0;
    for (const auto& item : doc["patterns"]) {
      const std::string where = "patterns[" + std::to_string(k++) + "]";
      try {
        std::optional<int> unique;
        if (item.contains("unique_count")) unique = item.at("unique_count").get<int>();
        out.push_back(checked(DfsCode::parse(item.at("code").get<std::string>()), item.at("support").get<int>(),
                              item.at("nodes").get<int>(), unique));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(where + ": " + e.what());
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    return out;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      out.push_back(parse_pattern_line(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Pattern> read_patterns(const std::filesystem::path& path) { return parse_patterns(read_text_file(path)); }

void write_patterns(const std::filesystem::path& path, const std::vector<Pattern>& patterns) {
  write_text_file(path, path.extension() == ".json" ? serialize_patterns_json(patterns)
                                                    : serialize_patterns_text(patterns));
}

}  // namespace opmine
