#include <algorithm>
#include <map>

#include "psph/error.hpp"
#include "psph/miner.hpp"

namespace psph {

namespace {

std::size_t count_support(const SequenceDatabase& db, const PositionalPattern& p) {
  std::size_t n = 0;
  for (const auto& row : db.rows) n += row_matches(p, row) ? 1 : 0;
  return n;
}

// Pattern text with the last literal removed, as the search would have grown it.
std::optional<PositionalPattern> parent_of(const PositionalPattern& p) {
  auto runs = p.runs();
  runs.back().pop_back();
  if (runs.back().empty()) runs.pop_back();
  if (runs.empty()) return std::nullopt;
  return PositionalPattern(std::move(runs));
}

// Semi-maximum period test done by brute force: for run r, the window between the end
// of the first instance of runs[0..r) and the latest start of run r that still fits
// inside the first instance of the whole pattern.
bool backscan_hit(const SequenceDatabase& db, const PositionalPattern& p, const std::vector<char32_t>& alphabet) {
  const auto& runs = p.runs();
  std::vector<std::size_t> matched;
  for (std::size_t i = 0; i < db.rows.size(); ++i) {
    if (row_matches(p, db.rows[i])) matched.push_back(i);
  }
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (char32_t c : alphabet) {
      if (!is_minable(c)) continue;
      bool everywhere = true;
      for (std::size_t i : matched) {
        const TextView row = db.rows[i];
        std::size_t lo = 0;
        if (r > 0) lo = *first_match_end(PositionalPattern({runs.begin(), runs.begin() + r}), row);
        std::size_t limit = *first_match_end(p, row);
        std::size_t start = limit;
        for (std::size_t q = runs.size(); q-- > r;) {
          // latest start of run q ending at or before limit
          std::size_t s = limit - runs[q].size();
          while (TextView(row).substr(s, runs[q].size()) != runs[q]) --s;
          start = s;
          limit = s;
        }
        if (TextView(row).substr(lo, start - lo).find(c) == TextView::npos) {
          everywhere = false;
          break;
        }
      }
      if (everywhere) return true;
    }
  }
  return false;
}

}  // namespace

PatternSet brute_force_mine(const SequenceDatabase& db, const MinerConfig& cfg, const ReferenceMinerLimits& limits) {
  if (db.empty()) throw ConfigError("cannot mine an empty database");
  const std::size_t minsup = cfg.minsup.resolve(db.size());
  if (minsup > db.size()) return {};
  const std::size_t cap = cfg.max_pattern_literals.value_or(limits.max_pattern_literals);
  const bool positional = cfg.mode == PatternMode::kPositional;
  const bool frontier = cfg.report == Report::kSearchFrontier;

  std::vector<char32_t> alphabet;
  for (char32_t c : db.alphabet()) {
    if (is_minable(c)) alphabet.push_back(c);
  }

  // Every frequent pattern up to cap + 1 literals (one extra level for closedness).
  std::map<Text, MinedPattern> frequent;
  std::vector<PositionalPattern> level;
  for (char32_t c : alphabet) {
    auto p = PositionalPattern::single(c);
    const std::size_t n = count_support(db, p);
    if (n >= minsup) {
      frequent.emplace(p.render_text(), MinedPattern{p, n});
      level.push_back(p);
    }
  }
  for (std::size_t len = 1; len <= cap && !level.empty(); ++len) {
    std::vector<PositionalPattern> next;
    for (const auto& p : level) {
      for (char32_t c : alphabet) {
        std::vector<PositionalPattern> kids{p.with_gap(c)};
        if (positional) kids.push_back(p.with_adjacent(c));
        for (auto& kid : kids) {
          const std::size_t n = count_support(db, kid);
          if (n < minsup) continue;
          frequent.emplace(kid.render_text(), MinedPattern{kid, n});
          next.push_back(std::move(kid));
          if (frequent.size() > limits.budget) throw BudgetExceeded("reference miner budget exceeded");
        }
      }
    }
    level = std::move(next);
  }

  PatternSet out;
  if (frontier) {
    // A pattern is listed when the search reaches it: its parent is listed, the growth
    // step survives the equal-frequency adjacency rule, and BackScan does not cut it.
    std::map<Text, bool> listed;
    std::vector<const MinedPattern*> by_length;
    for (const auto& [key, mp] : frequent) {
      if (mp.pattern.literal_count() <= cap) by_length.push_back(&mp);
    }
    std::stable_sort(by_length.begin(), by_length.end(), [](const auto* a, const auto* b) {
      return a->pattern.literal_count() < b->pattern.literal_count();
    });
    for (const auto* mp : by_length) {
      bool ok = true;
      if (auto parent = parent_of(mp->pattern)) {
        ok = listed[parent->render_text()];
        const bool gap_step = mp->pattern.run_count() > parent->run_count();
        if (ok && gap_step && positional) {
          const auto sibling = parent->with_adjacent(mp->pattern.runs().back().front());
          const auto it = frequent.find(sibling.render_text());
          if (it != frequent.end() && it->second.frequency == mp->frequency) ok = false;
        }
      }
      if (ok && cfg.pruning == BackScan::kOn && backscan_hit(db, mp->pattern, alphabet)) ok = false;
      listed[mp->pattern.render_text()] = ok;
      if (ok) out.push_back(*mp);
    }
  } else {
    for (const auto& [key, mp] : frequent) {
      if (mp.pattern.literal_count() > cap) continue;
      const bool closed = std::none_of(frequent.begin(), frequent.end(), [&](const auto& other) {
        const MinedPattern& q = other.second;
        if (q.frequency != mp.frequency || q.pattern == mp.pattern) return false;
        if (!positional) {
          return q.pattern.literal_count() > mp.pattern.literal_count() && pattern_contains(q.pattern, mp.pattern);
        }
        return pattern_subsumes(mp.pattern, q.pattern);
      });
      if (closed) out.push_back(mp);
    }
  }
  sort_patterns(out);
  return out;
}

}  // namespace psph
