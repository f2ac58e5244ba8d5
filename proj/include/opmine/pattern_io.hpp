#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "opmine/miner.hpp"

namespace opmine {

// `support=<n> nodes=<k> code=<canonical code>[ unique_count=<n>]`
std::string format_pattern_line(const Pattern& p);
// Throws ParseError; nodes must agree with the code.
Pattern parse_pattern_line(std::string_view line);

// One line per pattern; blank lines and lines starting with '#' ignored.
std::string serialize_patterns_text(const std::vector<Pattern>& patterns);

// {"patterns": [{"code", "support", "nodes", "edges", "unique_count"?}], ...}
std::string serialize_patterns_json(const std::vector<Pattern>& patterns);

// Accepts either format (JSON when the first non-blank character is '{').
std::vector<Pattern> parse_patterns(std::string_view text);
std::vector<Pattern> read_patterns(const std::filesystem::path& path);

// Writes JSON for a .json extension, text lines otherwise.
void write_patterns(const std::filesystem::path& path, const std::vector<Pattern>& patterns);

}  // namespace opmine
