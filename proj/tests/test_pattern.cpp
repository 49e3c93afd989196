#include <gtest/gtest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "psph/error.hpp"
#include "psph/pattern.hpp"
#include "psph/utf8.hpp"

using namespace psph;

namespace {

PositionalPattern P(std::string_view s) { return PositionalPattern::parse(s); }
Text T(std::string_view s) { return decode_utf8(s); }

// All strings of length 0..max_len over `alphabet`.
std::vector<Text> all_strings(const Text& alphabet, std::size_t max_len) {
  std::vector<Text> out{Text{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char32_t c : alphabet) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

// Every canonical pattern with up to max_literals literals over `alphabet`.
std::vector<PositionalPattern> all_patterns(const Text& alphabet, std::size_t max_literals) {
  std::vector<PositionalPattern> out;
  std::vector<PositionalPattern> level;
  for (char32_t c : alphabet) level.push_back(PositionalPattern::single(c));
  for (std::size_t n = 1; n <= max_literals; ++n) {
    out.insert(out.end(), level.begin(), level.end());
    if (n == max_literals) break;
    std::vector<PositionalPattern> next;
    for (const auto& p : level) {
      for (char32_t c : alphabet) {
        next.push_back(p.with_gap(c));
        next.push_back(p.with_adjacent(c));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::string wrapped(const PositionalPattern& p) { return "%" + p.render() + "%"; }

}  // namespace

TEST(ParseLike, Tokenizes) {
  auto p = parse_like("%AB%C%");
  ASSERT_EQ(p.tokens.size(), 6u);
  EXPECT_EQ(p.tokens[0], LikeToken::any_run());
  EXPECT_EQ(p.tokens[1], LikeToken::literal(U'A'));
  EXPECT_EQ(p.tokens[2], LikeToken::literal(U'B'));
  EXPECT_EQ(p.tokens[3], LikeToken::any_run());
  EXPECT_EQ(p.tokens[4], LikeToken::literal(U'C'));
  EXPECT_EQ(p.tokens[5], LikeToken::any_run());
  EXPECT_FALSE(p.anchored_prefix);
  EXPECT_FALSE(p.anchored_suffix);
  EXPECT_EQ(p.render(), p.raw);
}

TEST(ParseLike, Anchors) {
  auto luck = parse_like("Luck%");
  EXPECT_TRUE(luck.anchored_prefix);
  EXPECT_FALSE(luck.anchored_suffix);

  auto ab = parse_like("A_B");
  ASSERT_EQ(ab.tokens.size(), 3u);
  EXPECT_EQ(ab.tokens[1], LikeToken::any_one());
  EXPECT_TRUE(ab.anchored_prefix);
  EXPECT_TRUE(ab.anchored_suffix);
}

TEST(ParseLike, RejectsEmptyAndBadUtf8) {
  EXPECT_THROW(parse_like(""), InvalidPredicate);
  EXPECT_THROW(parse_like("\xC3"), InvalidPredicate);
}

TEST(ParseLike, KeepsUnicodeLiterals) {
  auto p = parse_like("%Gödel%");
  EXPECT_EQ(p.literal_count(), 5u);
  EXPECT_EQ(p.render(), "%Gödel%");
}

TEST(Canonicalize, CollapsesAndTrims) {
  EXPECT_EQ(*canonicalize(parse_like("%%AC%%CB%")), P("AC%CB"));
  EXPECT_EQ(*canonicalize(parse_like("Lu_k")), P("Lu%k"));
  EXPECT_EQ(canonicalize(parse_like("%A%B%C%D%A%"))->runs().size(), 5u);
  EXPECT_FALSE(canonicalize(parse_like("%%")).has_value());
  EXPECT_FALSE(canonicalize(parse_like("_")).has_value());
}

TEST(Canonicalize, Idempotent) {
  for (std::string raw : {"%%AC%%CB%", "Lu_k", "_a__b%", "x", "%a%", "ab_%_cd"}) {
    auto once = canonicalize(parse_like(raw));
    ASSERT_TRUE(once) << raw;
    auto twice = canonicalize(parse_like(once->render()));
    EXPECT_EQ(*once, *twice) << raw;
  }
}

TEST(PositionalPattern, ParseRejectsNonCanonical) {
  for (std::string bad : {"", "%A", "A%", "A%%B", "A_B", "%"}) {
    EXPECT_THROW(P(bad), FormatError) << bad;
  }
  EXPECT_THROW(PositionalPattern(std::vector<Text>{}), ConfigError);
  EXPECT_THROW(PositionalPattern({T("A"), T("")}), ConfigError);
  EXPECT_THROW(PositionalPattern({T("A%")}), ConfigError);
}

TEST(PositionalPattern, RenderRoundTrip) {
  for (std::string s : {"A", "AC%CB", "A%C%BE", "ab%c%def", "ü%ß"}) {
    EXPECT_EQ(P(s).render(), s);
  }
  EXPECT_EQ(P("AC%CB").literal_count(), 4u);
  EXPECT_EQ(P("AC").with_gap(U'B'), P("AC%B"));
  EXPECT_EQ(P("AC").with_adjacent(U'B'), P("ACB"));
}

TEST(PositionalPattern, RenderedOrder) {
  // '%' sorts before letters; prefixes come first.
  EXPECT_TRUE(compare_rendered(P("A%B"), P("AB")) < 0);
  EXPECT_TRUE(compare_rendered(P("A"), P("A%B")) < 0);
  EXPECT_TRUE(compare_rendered(P("AB"), P("AB")) == 0);
}

TEST(Striped, DropsWildcards) {
  EXPECT_EQ(striped(P("A%C%BE")).chars, T("ACBE"));
  EXPECT_EQ(striped(P("AC%B")).chars, T("ACB"));
  EXPECT_EQ(striped(P("B")).chars, T("B"));
}

TEST(ProperlyContains, Subsequence) {
  EXPECT_TRUE(properly_contains({T("ACBCD")}, {T("ABD")}));
  EXPECT_FALSE(properly_contains({T("ACDCB")}, {T("ABD")}));
  EXPECT_TRUE(properly_contains({T("X")}, {T("X")}));
}

TEST(ProperlyContains, ReflexiveAndTransitive) {
  const auto strings = all_strings(T("AB"), 4);
  for (const auto& a : strings) {
    EXPECT_TRUE(properly_contains({a}, {a}));
    for (const auto& b : strings) {
      if (!properly_contains({a}, {b})) continue;
      for (const auto& c : strings) {
        if (properly_contains({b}, {c})) EXPECT_TRUE(properly_contains({a}, {c}));
      }
    }
  }
}

TEST(RowMatches, AdjacencyWithinRuns) {
  EXPECT_TRUE(row_matches(P("A%BD"), T("ACBD")));
  EXPECT_FALSE(row_matches(P("A%BD"), T("ACBAD")));
  const std::vector<Text> fig1{T("ABCABE"), T("BCACDBE"), T("BACDCEDB"), T("ACECBE")};
  std::vector<bool> hits;
  for (const auto& row : fig1) hits.push_back(row_matches(P("AC"), row));
  EXPECT_EQ(hits, (std::vector<bool>{false, true, true, true}));
}

TEST(RowMatches, FirstMatchEnd) {
  EXPECT_EQ(first_match_end(P("A%B"), T("xAyBzB")), 4u);
  EXPECT_EQ(first_match_end(P("A%B"), T("xAyBzB"), 2), std::nullopt);
  EXPECT_EQ(first_match_end(P("CB"), T("ACECBE")), 5u);
}

TEST(LikeMatches, Semantics) {
  const std::vector<Text> fig6{T("BCAB"),  T("BCAC"),  T("ACXCB"), T("ACYCB"),
                               T("ACZCB"), T("AYCCB"), T("AZCCB"), T("ACXCB")};
  auto cc = parse_like("%C%C%");
  std::size_t n = 0;
  for (const auto& row : fig6) n += like_matches(cc, row) ? 1 : 0;
  EXPECT_EQ(n, 7u);

  EXPECT_TRUE(like_matches(parse_like("A_C"), T("ABC")));
  EXPECT_FALSE(like_matches(parse_like("A_C"), T("AC")));
  EXPECT_TRUE(like_matches(parse_like("Luck%"), T("Lucky")));
  EXPECT_FALSE(like_matches(parse_like("Luck%"), T("aLucky")));
  EXPECT_TRUE(like_matches(parse_like("%"), T("")));
  EXPECT_FALSE(like_matches(parse_like("_"), T("")));
}

TEST(RowMatches, AgreesWithWrappedLike) {
  const auto strings = all_strings(T("ABC"), 6);
  for (const auto& p : all_patterns(T("ABC"), 3)) {
    const auto like = parse_like(wrapped(p));
    for (const auto& w : strings) {
      ASSERT_EQ(row_matches(p, w), like_matches(like, w)) << p.render() << " on " << encode_utf8(w);
    }
  }
}

TEST(PatternContains, Striped) {
  EXPECT_TRUE(pattern_contains(P("A%C%BE"), P("AC%B")));
  EXPECT_FALSE(pattern_contains(P("AC%B"), P("A%C%BE")));
  EXPECT_TRUE(pattern_contains(P("X"), P("X")));
}

TEST(PatternSubsumes, Examples) {
  EXPECT_TRUE(pattern_subsumes(P("C%C"), P("A%C%CB")));
  EXPECT_FALSE(pattern_subsumes(P("CC"), P("A%C%CB")));
  EXPECT_TRUE(pattern_subsumes(P("AB%C"), P("AB%C")));
  EXPECT_TRUE(pattern_subsumes(P("B%C"), P("ABC%C")));
  EXPECT_TRUE(pattern_subsumes(P("A%B"), P("AB")));
}

TEST(PatternSubsumes, CounterexampleForStripedContainment) {
  // A row matching A%C%CB but not CC exists, so striped containment is weaker.
  EXPECT_TRUE(pattern_contains(P("A%C%CB"), P("CC")));
  bool found = false;
  for (const auto& w : all_strings(T("ABC"), 8)) {
    if (row_matches(P("A%C%CB"), w) && !row_matches(P("CC"), w)) {
      found = true;
      break;
    }
  }
  EXPECT_TRUE(found);
}

// Sound over every string of length <= 8 on three letters for patterns of <= 4 literals.
TEST(PatternSubsumes, ExhaustivelySound) {
  const Text alphabet = T("ABC");
  const auto strings = all_strings(alphabet, 8);
  const auto patterns = all_patterns(alphabet, 4);
  std::vector<std::vector<std::uint64_t>> bits(patterns.size(),
                                               std::vector<std::uint64_t>((strings.size() + 63) / 64));
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    for (std::size_t w = 0; w < strings.size(); ++w) {
      if (row_matches(patterns[i], strings[w])) bits[i][w / 64] |= std::uint64_t{1} << (w % 64);
    }
  }
  std::size_t checked = 0;
  for (std::size_t g = 0; g < patterns.size(); ++g) {
    for (std::size_t s = 0; s < patterns.size(); ++s) {
      const bool sub = pattern_subsumes(patterns[g], patterns[s]);
      if (anchored_subsumes(patterns[g], patterns[s])) {
        ASSERT_TRUE(sub) << patterns[g].render() << " / " << patterns[s].render();
      }
      if (!sub) continue;
      ++checked;
      ASSERT_TRUE(pattern_contains(patterns[s], patterns[g]));
      for (std::size_t k = 0; k < bits[s].size(); ++k) {
        ASSERT_EQ(bits[s][k] & ~bits[g][k], 0u) << patterns[g].render() << " / " << patterns[s].render();
      }
    }
  }
  EXPECT_GT(checked, patterns.size());
}

TEST(AnchoredSubsumes, PrefixOfLaterRuns) {
  EXPECT_TRUE(anchored_subsumes(P("C%C"), P("A%C%CB")));
  EXPECT_TRUE(anchored_subsumes(P("C%C"), P("C%CB")));
  EXPECT_FALSE(anchored_subsumes(P("C%C"), P("AC%CB")));
  EXPECT_FALSE(anchored_subsumes(P("CB"), P("C")));
  EXPECT_TRUE(anchored_subsumes(P("C"), P("C")));
}

TEST(Database, AlphabetAndLength) {
  std::vector<std::string_view> rows{"BCA", "AAD", "BCA"};
  auto db = make_database(rows);
  EXPECT_EQ(db.size(), 3u);
  EXPECT_EQ(db.alphabet(), (std::vector<char32_t>{U'A', U'B', U'C', U'D'}));
  EXPECT_EQ(db.max_row_length(), 3u);
}

TEST(Utf8, RejectsMalformed) {
  EXPECT_THROW(decode_utf8("\xC0\x80"), FormatError);      // overlong
  EXPECT_THROW(decode_utf8("\xED\xA0\x80"), FormatError);  // surrogate
  EXPECT_THROW(decode_utf8("\xE2\x82"), FormatError);      // truncated
  EXPECT_EQ(encode_utf8(decode_utf8("aé€😀")), "aé€😀");
}
