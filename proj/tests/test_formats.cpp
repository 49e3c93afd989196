#include <gtest/gtest.h>

#include <sstream>

#include "psph/dataset.hpp"
#include "psph/error.hpp"
#include "psph/pattern_file.hpp"

using namespace psph;

namespace {

PatternFile sample() {
  std::vector<std::string_view> rows{"ABCABE", "BCACDBE", "BACDCEDB", "ACECBE", "Zoë Ångström"};
  MinerConfig cfg;
  cfg.minsup = Minsup::absolute(1);
  const auto db = make_database(rows);
  return {1, db.size(), PatternMode::kPositional, mine(db, cfg)};
}

std::string fails(const std::string& text) {
  std::istringstream in(text);
  try {
    read_patterns(in);
  } catch (const FormatError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(PatternFile, RoundTrip) {
  const auto file = sample();
  std::stringstream a;
  write_patterns(a, file);
  const std::string text = a.str();
  EXPECT_EQ(text.rfind("PSPH-PATTERNS v1\nminsup_count=1\ndb_size=5\nmode=POSITIONAL\n", 0), 0u);
  const auto back = read_patterns(a);
  EXPECT_EQ(back, file);
  std::stringstream b;
  write_patterns(b, back);
  EXPECT_EQ(b.str(), text);
}

TEST(PatternFile, Rejects) {
  const std::string head = "PSPH-PATTERNS v1\nminsup_count=2\ndb_size=4\nmode=REGULAR\n";
  EXPECT_NE(fails("PSPH-PATTERNS v2\n").find("unsupported version"), std::string::npos);
  EXPECT_NE(fails(head + "A\t3\nB\tx\n").find("line 6"), std::string::npos);
  EXPECT_FALSE(fails(head + "A\n").empty());
  EXPECT_FALSE(fails(head + "%A\t3\n").empty());
  EXPECT_FALSE(fails(head + "A\t1\n").empty());
  EXPECT_FALSE(fails(head + "A\t5\n").empty());
  EXPECT_FALSE(fails("PSPH-PATTERNS v1\nminsup_count=2\ndb_size=4\nmode=OTHER\n").empty());
  EXPECT_FALSE(fails("PSPH-PATTERNS v1\ndb_size=4\n").empty());
  EXPECT_TRUE(fails(head + "A\t3\n").empty());
  EXPECT_TRUE(fails(head).empty());
}

TEST(Dataset, ReadWrite) {
  std::istringstream in("ABC\n\nDÉF\nlast");
  const auto db = read_dataset(in);
  ASSERT_EQ(db.size(), 3u);
  EXPECT_EQ(db.rows[1], U"DÉF");
  std::ostringstream out;
  write_dataset(out, db);
  EXPECT_EQ(out.str(), "ABC\nDÉF\nlast\n");
}

TEST(Dataset, MalformedLine) {
  std::istringstream in("ok\nbad\xFF\n");
  try {
    read_dataset(in);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Dataset, MissingFile) { EXPECT_THROW(load_dataset("/nonexistent/psph.txt"), Error); }
