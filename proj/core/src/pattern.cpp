#include "psph/pattern.hpp"

#include <algorithm>

#include "psph/error.hpp"

namespace psph {

std::vector<char32_t> SequenceDatabase::alphabet() const {
  std::vector<char32_t> out;
  for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t SequenceDatabase::max_row_length() const noexcept {
  std::size_t longest = 0;
  for (const auto& row : rows) longest = std::max(longest, row.size());
  return longest;
}

SequenceDatabase make_database(std::span<const std::string_view> utf8_rows) {
  SequenceDatabase db;
  db.rows.reserve(utf8_rows.size());
  for (auto row : utf8_rows) db.rows.push_back(decode_utf8(row));
  return db;
}

// ---------------------------------------------------------------------------
// PositionalPattern

PositionalPattern::PositionalPattern(std::vector<Text> runs) : runs_(std::move(runs)) {
  if (runs_.empty()) throw ConfigError("pattern needs at least one literal run");
  for (const auto& run : runs_) {
    if (run.empty()) throw ConfigError("pattern runs must be non-empty");
    for (char32_t ch : run) {
      if (!is_pattern_literal(ch)) {
        throw ConfigError("character U+" + std::to_string(static_cast<unsigned>(ch)) +
                          " cannot be a pattern literal");
      }
    }
  }
}

PositionalPattern PositionalPattern::single(char32_t literal) {
  return PositionalPattern({Text(1, literal)});
}

PositionalPattern PositionalPattern::parse(std::string_view utf8) {
  Text text;
  try {
    text = decode_utf8(utf8);
  } catch (const FormatError& e) {
    throw FormatError(std::string("pattern: ") + e.what(), 0);
  }
  if (text.empty()) throw FormatError("empty pattern", 0);
  std::vector<Text> runs;
  Text current;
  for (char32_t ch : text) {
    if (ch == kAnyRun) {
      if (current.empty()) throw FormatError("pattern '" + std::string(utf8) + "' is not canonical", 0);
      runs.push_back(std::move(current));
      current.clear();
    } else if (!is_pattern_literal(ch)) {
      throw FormatError("pattern '" + std::string(utf8) + "' holds a non-literal character", 0);
    } else {
      current.push_back(ch);
    }
  }
  if (current.empty()) throw FormatError("pattern '" + std::string(utf8) + "' is not canonical", 0);
  runs.push_back(std::move(current));
  return PositionalPattern(std::move(runs));
}

std::size_t PositionalPattern::literal_count() const noexcept {
  std::size_t n = 0;
  for (const auto& run : runs_) n += run.size();
  return n;
}

PositionalPattern PositionalPattern::with_gap(char32_t literal) const {
  PositionalPattern out = *this;
  out.runs_.emplace_back(1, literal);
  return out;
}

PositionalPattern PositionalPattern::with_adjacent(char32_t literal) const {
  PositionalPattern out = *this;
  out.runs_.back().push_back(literal);
  return out;
}

Text PositionalPattern::render_text() const {
  Text out;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (i > 0) out.push_back(kAnyRun);
    out += runs_[i];
  }
  return out;
}

std::string PositionalPattern::render() const { return encode_utf8(render_text()); }

std::strong_ordering compare_rendered(const PositionalPattern& a, const PositionalPattern& b) {
  const Text ra = a.render_text();
  const Text rb = b.render_text();
  return ra.compare(rb) <=> 0;
}

// ---------------------------------------------------------------------------
// LIKE predicates

std::size_t LikePredicate::literal_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const LikeToken& t) { return t.is_literal(); }));
}

std::string LikePredicate::render() const {
  Text text;
  text.reserve(tokens.size());
  for (const auto& t : tokens) text.push_back(t.ch);
  return encode_utf8(text);
}

LikePredicate parse_like(std::string_view utf8) {
  if (utf8.empty()) throw InvalidPredicate("empty LIKE predicate");
  Text text;
  try {
    text = decode_utf8(utf8);
  } catch (const FormatError& e) {
    throw InvalidPredicate(std::string("LIKE predicate: ") + e.what());
  }
  LikePredicate out;
  out.raw = std::string(utf8);
  out.tokens.reserve(text.size());
  for (char32_t ch : text) {
    if (ch == kAnyRun) {
      out.tokens.push_back(LikeToken::any_run());
    } else if (ch == kAnyOne) {
      out.tokens.push_back(LikeToken::any_one());
    } else {
      out.tokens.push_back(LikeToken::literal(ch));
    }
  }
  out.anchored_prefix = out.tokens.front().kind != LikeToken::Kind::kAnyRun;
  out.anchored_suffix = out.tokens.back().kind != LikeToken::Kind::kAnyRun;
  return out;
}

std::optional<PositionalPattern> canonicalize(std::span<const LikeToken> tokens) {
  std::vector<Text> runs;
  Text current;
  for (const auto& t : tokens) {
    if (t.is_literal()) {
      current.push_back(t.ch);
    } else if (!current.empty()) {
      runs.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) runs.push_back(std::move(current));
  if (runs.empty()) return std::nullopt;
  return PositionalPattern(std::move(runs));
}

std::optional<PositionalPattern> canonicalize(const LikePredicate& predicate) {
  return canonicalize(std::span<const LikeToken>(predicate.tokens));
}

// ---------------------------------------------------------------------------
// Containment relations

StripedSequence striped(const PositionalPattern& pattern) {
  StripedSequence out;
  for (const auto& run : pattern.runs()) out.chars += run;
  return out;
}

bool properly_contains(const StripedSequence& q, const StripedSequence& s) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < q.chars.size() && j < s.chars.size(); ++i) {
    if (q.chars[i] == s.chars[j]) ++j;
  }
  return j == s.chars.size();
}

std::optional<std::size_t> first_match_end(const PositionalPattern& pattern, TextView row,
                                           std::size_t from) {
  std::size_t pos = from;
  for (const auto& run : pattern.runs()) {
    if (pos > row.size()) return std::nullopt;
    const auto hit = row.find(run, pos);
    if (hit == TextView::npos) return std::nullopt;
    pos = hit + run.size();
  }
  return pos;
}

bool row_matches(const PositionalPattern& pattern, TextView row) {
  return first_match_end(pattern, row).has_value();
}

bool like_matches(std::span<const LikeToken> tokens, TextView row) {
  const std::size_t n = row.size();
  const std::size_t m = tokens.size();
  std::size_t t = 0;
  std::size_t p = 0;
  std::size_t star = m;  // index of the last `%` seen, m when none
  std::size_t mark = 0;  // row position that `%` was resumed from
  while (t < n) {
    if (p < m && tokens[p].kind != LikeToken::Kind::kAnyRun &&
        (tokens[p].kind == LikeToken::Kind::kAnyOne || tokens[p].ch == row[t])) {
      ++p;
      ++t;
    } else if (p < m && tokens[p].kind == LikeToken::Kind::kAnyRun) {
      star = p++;
      mark = t;
    } else if (star != m) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < m && tokens[p].kind == LikeToken::Kind::kAnyRun) ++p;
  return p == m;
}

bool like_matches(const LikePredicate& predicate, TextView row) {
  return like_matches(std::span<const LikeToken>(predicate.tokens), row);
}

bool pattern_contains(const PositionalPattern& p, const PositionalPattern& r) {
  return properly_contains(striped(p), striped(r));
}

bool pattern_subsumes(const PositionalPattern& general, const PositionalPattern& specific) {
  const auto& target = specific.runs();
  std::size_t j = 0;
  std::size_t offset = 0;
  for (const auto& run : general.runs()) {
    bool placed = false;
    while (j < target.size()) {
      const auto hit = TextView(target[j]).find(run, offset);
      if (hit != TextView::npos) {
        offset = hit + run.size();
        placed = true;
        break;
      }
      ++j;
      offset = 0;
    }
    if (!placed) return false;
  }
  return true;
}

bool anchored_subsumes(const PositionalPattern& general, const PositionalPattern& specific) {
  const auto& target = specific.runs();
  std::size_t j = 0;
  for (const auto& run : general.runs()) {
    while (j < target.size() && !TextView(target[j]).starts_with(run)) ++j;
    if (j == target.size()) return false;
    ++j;
  }
  return true;
}

}  // namespace psph
