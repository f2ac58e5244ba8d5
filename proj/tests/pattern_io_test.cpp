#include <gtest/gtest.h>

#include "opmine/errors.hpp"
#include "opmine/ingest.hpp"
#include "opmine/pattern_io.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

using namespace opmine;
using namespace opmine::testing;

namespace {

std::vector<Pattern> sample() {
  auto a = make_pattern(min_dfs_code(make_chain({"A", "B", "C"})), 3);
  auto b = make_pattern(min_dfs_code(make_graph({"Conv 2D", "x(y)"}, {{0, 1}, {1, 0}})), 2);
  b.unique_count = 1;
  DfsCode lone;
  lone.root_label = OpLabel("X");
  return {a, b, make_pattern(lone, 5)};
}

}  // namespace

TEST(PatternLineTest, Format) {
  EXPECT_EQ(format_pattern_line(sample()[0]), "support=3 nodes=3 code=(0,1,A,>,B);(1,2,B,>,C)");
  EXPECT_EQ(format_pattern_line(sample()[2]), "support=5 nodes=1 code=(X)");
  const auto line = format_pattern_line(sample()[1]);
  EXPECT_NE(line.find(" unique_count=1"), std::string::npos);
  EXPECT_EQ(line.find(' ', line.find("code=")), line.find(" unique_count"));
}

TEST(PatternLineTest, RoundTripBothFormats) {
  const auto ps = sample();
  EXPECT_EQ(parse_patterns(serialize_patterns_text(ps)), ps);
  EXPECT_EQ(parse_patterns(serialize_patterns_json(ps)), ps);
}

TEST(PatternLineTest, CommentsAndBlankLinesIgnored) {
  const auto ps = parse_patterns("# header\n\nsupport=2 nodes=2 code=(0,1,A,>,B)\n");
  ASSERT_EQ(ps.size(), 1U);
  EXPECT_EQ(ps[0].edge_count, 1);
  EXPECT_FALSE(ps[0].unique_count);
}

TEST(PatternLineTest, Errors) {
  EXPECT_THROW(parse_pattern_line("support=2 nodes=3 code=(0,1,A,>,B)"), ParseError);
  EXPECT_THROW(parse_pattern_line("support=2 code=(0,1,A,>,B)"), ParseError);
  EXPECT_THROW(parse_pattern_line("support=x nodes=2 code=(0,1,A,>,B)"), ParseError);
  EXPECT_THROW(parse_pattern_line("support=2 nodes=2 code=(0,1,A,>,B) colour=red"), ParseError);
  EXPECT_THROW(parse_pattern_line("support=2 nodes=2 code=(0,1,A,?,B)"), ParseError);
  try {
    parse_patterns("support=2 nodes=2 code=(0,1,A,>,B)\nbogus\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_patterns(R"j({"patterns": [{"code": "(X)"}]})j"), ParseError);
  EXPECT_THROW(parse_patterns("{"), ParseError);
}

TEST(PatternFileTest, ExtensionSelectsFormat) {
  TempDir dir;
  const auto ps = sample();
  write_patterns(dir.path() / "p.json", ps);
  write_patterns(dir.path() / "p.txt", ps);
  EXPECT_EQ(read_text_file(dir.path() / "p.json").front(), '{');
  EXPECT_EQ(read_patterns(dir.path() / "p.json"), ps);
  EXPECT_EQ(read_patterns(dir.path() / "p.txt"), ps);
}
