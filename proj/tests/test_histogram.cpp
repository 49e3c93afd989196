#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "psph/error.hpp"
#include "psph/histogram.hpp"

using namespace psph;

namespace {

PositionalPattern P(std::string_view s) { return PositionalPattern::parse(s); }
MinedPattern M(std::string_view s, std::size_t f) { return {P(s), f}; }

SequenceDatabase tiny_db() {
  std::vector<std::string_view> rows{"ABCABE", "BCACDBE", "BACDCEDB", "ACECBE"};
  return make_database(rows);
}

// Running-sum scan written out with exact integers: select when S >= n * total / k.
std::vector<Bucket> replay(PatternSet ps, std::size_t k) {
  std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) { return compare_rendered(a.pattern, b.pattern) < 0; });
  const bool every = k > ps.size();
  std::size_t total = 0;
  for (const auto& mp : ps) total += mp.frequency;
  std::vector<Bucket> out;
  std::size_t s = 0, n = 1;
  for (const auto& mp : ps) {
    s += mp.frequency;
    if (every || s * k >= n * total) {
      out.push_back({s, mp.pattern, mp.frequency});
      n = s * k / total + 1;
    }
  }
  return out;
}

}  // namespace

TEST(InformationContent, Values) {
  EXPECT_DOUBLE_EQ(information_content(8, 8), 0.0);
  EXPECT_NEAR(information_content(4, 8), 0.693147, 1e-6);
  EXPECT_NEAR(information_content(1, 800000), 13.592367, 1e-6);
  EXPECT_THROW(information_content(0, 8), ConfigError);
  EXPECT_THROW(information_content(1, 0), ConfigError);
  EXPECT_THROW(information_content(9, 8), ConfigError);
}

TEST(Redundancy, WorkedExample) {
  PatternSet ps{M("A%C%BE", 3), M("AC%B", 3)};
  auto r = eliminate_redundant(ps, {}, 4);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].pattern, P("A%C%BE"));
  ASSERT_EQ(r.removals.size(), 1u);
  EXPECT_EQ(r.removals[0].removed.pattern, P("AC%B"));
  EXPECT_EQ(r.removals[0].witness.pattern, P("A%C%BE"));
}

TEST(Redundancy, DisabledIsIdentity) {
  PatternSet ps{M("AC%B", 3), M("A%C%BE", 3)};
  RedundancyConfig cfg;
  cfg.enabled = false;
  auto r = eliminate_redundant(ps, cfg, 4);
  sort_patterns(ps);
  EXPECT_EQ(r.kept, ps);
  EXPECT_TRUE(r.removals.empty());
}

TEST(Redundancy, LargeGainKeeps) {
  PatternSet ps{M("AB", 5), M("ABC", 2)};
  RedundancyConfig cfg;
  cfg.delta = 0.5;
  EXPECT_EQ(eliminate_redundant(ps, cfg, 10).kept.size(), 2u);
}

TEST(Redundancy, TieKeepsOne) {
  // Same literals, same frequency: exactly one survives, the more specific one.
  PatternSet ps{M("A%B", 4), M("AB", 4)};
  auto r = eliminate_redundant(ps, {}, 8);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].pattern, P("AB"));
}

TEST(Redundancy, WitnessesAndOrderIndependence) {
  MinerConfig mc;
  mc.minsup = Minsup::absolute(2);
  const auto db = tiny_db();
  auto ps = mine(db, mc);
  RedundancyConfig cfg;
  cfg.delta = 0.3;
  const auto base = eliminate_redundant(ps, cfg, db.size());
  EXPECT_FALSE(base.removals.empty());
  for (const auto& rm : base.removals) {
    EXPECT_NE(rm.witness.pattern, rm.removed.pattern);
    EXPECT_TRUE(pattern_contains(rm.witness.pattern, rm.removed.pattern));
    const double gain = information_content(rm.witness.frequency, db.size()) -
                        information_content(rm.removed.frequency, db.size());
    EXPECT_GE(gain, 0.0);
    EXPECT_LT(gain, cfg.delta);
    EXPECT_TRUE(is_redundancy_witness(rm.witness, rm.removed, cfg.delta, db.size()));
    EXPECT_NE(std::find(ps.begin(), ps.end(), rm.witness), ps.end());
  }
  EXPECT_EQ(base.kept.size() + base.removals.size(), ps.size());

  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(ps.begin(), ps.end(), rng);
    EXPECT_EQ(eliminate_redundant(ps, cfg, db.size()).kept, base.kept);
  }
}

TEST(Redundancy, ContainmentAndFrequency) {
  const auto db = tiny_db();
  MinerConfig mc;
  mc.minsup = Minsup::absolute(1);
  // Regular patterns: striped containment implies lower frequency and higher IC.
  mc.mode = PatternMode::kRegular;
  const auto regular = mine(db, mc);
  for (const auto& r : regular) {
    for (const auto& p : regular) {
      if (!pattern_contains(r.pattern, p.pattern)) continue;
      EXPECT_LE(r.frequency, p.frequency) << r.pattern.render() << " " << p.pattern.render();
      EXPECT_GE(information_content(r.frequency, db.size()), information_content(p.frequency, db.size()));
    }
  }
  // Positional patterns only when the adjacency also refines; striped containment
  // alone does not order frequencies.
  mc.mode = PatternMode::kPositional;
  const auto positional = mine(db, mc);
  for (const auto& r : positional) {
    for (const auto& p : positional) {
      if (pattern_subsumes(p.pattern, r.pattern)) EXPECT_LE(r.frequency, p.frequency);
    }
  }
  EXPECT_TRUE(pattern_contains(P("A%C%B"), P("AC%B")));
  std::size_t loose = 0, tight = 0;
  for (const auto& row : db.rows) {
    loose += row_matches(P("A%C%B"), row);
    tight += row_matches(P("AC%B"), row);
  }
  EXPECT_GT(loose, tight);
  EXPECT_FALSE(is_redundancy_witness({P("A%C%B"), loose}, {P("AC%B"), tight}, 1.0, db.size()));
}

TEST(Build, TwoPatterns) {
  auto h = build_histogram({M("B", 4), M("A", 4)}, 2, {8, 2, 10.0});
  ASSERT_EQ(h.buckets.size(), 2u);
  EXPECT_EQ(h.buckets[0], (Bucket{4, P("A"), 4}));
  EXPECT_EQ(h.buckets[1], (Bucket{8, P("B"), 4}));
  EXPECT_EQ(h.bucket_count_requested, 2u);
}

TEST(Build, SinglePattern) {
  for (std::size_t k : {1u, 3u, 100u}) {
    auto h = build_histogram({M("AB", 7)}, k, {10, 2, 10.0});
    ASSERT_EQ(h.buckets.size(), 1u);
    EXPECT_EQ(h.buckets[0].endpoint_number, 7u);
  }
}

TEST(Build, MoreBucketsThanPatterns) {
  auto h = build_histogram({M("A", 9), M("B", 1), M("C", 1)}, 5, {10, 1, 10.0});
  EXPECT_EQ(h.buckets.size(), 3u);
}

TEST(Build, TinyClosedSetFiveBuckets) {
  MinerConfig mc;
  mc.minsup = Minsup::absolute(3);
  const auto ps = mine(tiny_db(), mc);
  ASSERT_EQ(ps.size(), 12u);
  std::size_t total = 0;
  for (const auto& mp : ps) total += mp.frequency;
  EXPECT_EQ(total, 39u);
  auto h = build_histogram(ps, 5, {4, 3, 10.0});
  EXPECT_EQ(h.buckets, replay(ps, 5));
  EXPECT_EQ(h.buckets.size(), 5u);
  EXPECT_EQ(h.buckets.back().endpoint_number, 39u);
}

TEST(Build, ReplayOnRandomSets) {
  std::mt19937 rng(17);
  const auto db = tiny_db();
  MinerConfig mc;
  mc.minsup = Minsup::absolute(1);
  const auto all = mine(db, mc);
  for (int round = 0; round < 50; ++round) {
    PatternSet ps;
    for (const auto& mp : all) {
      if (rng() % 3 == 0) ps.push_back(mp);
    }
    if (ps.empty()) continue;
    const std::size_t k = 1 + rng() % 12;
    const auto h = build_histogram(ps, k, {db.size(), 1, 10.0});
    EXPECT_LE(h.buckets.size(), k);
    EXPECT_EQ(h.buckets, replay(ps, k));
    for (std::size_t i = 1; i < h.buckets.size(); ++i) {
      EXPECT_LT(h.buckets[i - 1].endpoint_number, h.buckets[i].endpoint_number);
      EXPECT_TRUE(compare_rendered(h.buckets[i - 1].endpoint, h.buckets[i].endpoint) < 0);
    }
  }
}

TEST(Build, Errors) {
  EXPECT_THROW(build_histogram({}, 4, {8, 1, 10.0}), ConfigError);
  EXPECT_THROW(build_histogram({M("A", 1)}, 0, {8, 1, 10.0}), ConfigError);
}

TEST(Catalog, RoundTrip) {
  MinerConfig mc;
  mc.minsup = Minsup::absolute(2);
  auto h = build_histogram(mine(tiny_db(), mc), 7, {4, 2, 12.5});
  std::stringstream a;
  save_histogram(a, h);
  const std::string text = a.str();
  auto back = read_histogram(a);
  EXPECT_EQ(back, h);
  std::stringstream b;
  save_histogram(b, back);
  EXPECT_EQ(b.str(), text);
}

TEST(Catalog, HandWrittenFixture) {
  const auto h = load_histogram(PSPH_TEST_DATA "/eight_rows.cat");
  EXPECT_EQ(h.db_size, 8u);
  EXPECT_EQ(h.minsup_count, 2u);
  EXPECT_EQ(h.t_percent, 10.0);
  ASSERT_EQ(h.buckets.size(), 4u);
  EXPECT_EQ(h.buckets[1], (Bucket{36, P("AC%CB"), 3}));
}

TEST(Catalog, Rejects) {
  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_histogram(in);
    } catch (const FormatError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string head = "PSPH-HISTOGRAM v1\ndb_size=8\nminsup_count=2\nt_percent=10\nbuckets=4\n";
  EXPECT_NE(fails("PSPH-HISTOGRAM v9\n").find("unsupported version"), std::string::npos);
  EXPECT_NE(fails(head + "5\tB\t3\n4\tC\t3\n").find("line 7"), std::string::npos);
  EXPECT_FALSE(fails(head + "5\tB\t1\n").empty());    // below minsup
  EXPECT_FALSE(fails(head + "5\tB\t9\n").empty());    // above db_size
  EXPECT_FALSE(fails(head + "5\tA%\t3\n").empty());   // not canonical
  EXPECT_FALSE(fails(head + "5\tC\t3\n9\tB\t3\n").empty());  // unsorted
  EXPECT_FALSE(fails(head).empty());                   // no buckets
  EXPECT_FALSE(fails("PSPH-HISTOGRAM v1\ndb_size=8\n").empty());
  EXPECT_TRUE(fails(head + "5\tB\t3\n").empty());
}
