#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psph/utf8.hpp"

namespace psph {

/// Wildcards of the LIKE syntax. Neither may appear inside a pattern literal.
inline constexpr char32_t kAnyRun = U'%';
inline constexpr char32_t kAnyOne = U'_';

/// True for characters that can be a pattern literal, i.e. anything but a wildcard.
constexpr bool is_pattern_literal(char32_t ch) noexcept { return ch != kAnyRun && ch != kAnyOne; }

/// True for literals the miner may emit. TAB and line breaks are excluded because
/// they are separators in the pattern and catalog file formats.
constexpr bool is_minable(char32_t ch) noexcept {
  return is_pattern_literal(ch) && ch != U'\t' && ch != U'\n' && ch != U'\r';
}

/// A text column: one row per entry. Rows may repeat.
struct SequenceDatabase {
  std::vector<Text> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }

  /// Distinct characters over all rows, in code-point order.
  std::vector<char32_t> alphabet() const;
  std::size_t max_row_length() const noexcept;
};

SequenceDatabase make_database(std::span<const std::string_view> utf8_rows);

/// Literal runs separated by gaps, e.g. `AC%CB` is runs {AC, CB}.
///
/// Matching is always substring-anywhere: the pattern behaves like the LIKE string
/// `%` + render() + `%`. Characters inside a run are adjacent in every match, a gap
/// admits zero or more characters.
class PositionalPattern {
 public:
  /// Throws ConfigError if `runs` is empty, a run is empty, or a run holds a wildcard.
  explicit PositionalPattern(std::vector<Text> runs);

  static PositionalPattern single(char32_t literal);

  /// Parses the canonical LIKE rendering (`AC%CB`). Throws FormatError for anything
  /// that is not already canonical: leading/trailing/doubled `%`, `_`, empty input.
  static PositionalPattern parse(std::string_view utf8);

  const std::vector<Text>& runs() const noexcept { return runs_; }
  std::size_t run_count() const noexcept { return runs_.size(); }
  std::size_t literal_count() const noexcept;

  /// Pattern grown by one literal after a gap (`P%x`).
  PositionalPattern with_gap(char32_t literal) const;
  /// Pattern grown by one literal adjacent to the last one (`Px`).
  PositionalPattern with_adjacent(char32_t literal) const;

  Text render_text() const;
  std::string render() const;

  friend bool operator==(const PositionalPattern&, const PositionalPattern&) = default;

 private:
  PositionalPattern() = default;
  std::vector<Text> runs_;
};

/// Orders patterns by the code points of their LIKE rendering, shorter first on ties.
/// `%` (U+0025) therefore sorts before letters and digits.
std::strong_ordering compare_rendered(const PositionalPattern& a, const PositionalPattern& b);

struct RenderedLess {
  bool operator()(const PositionalPattern& a, const PositionalPattern& b) const {
    return compare_rendered(a, b) < 0;
  }
};

struct LikeToken {
  enum class Kind { kLiteral, kAnyRun, kAnyOne };

  Kind kind = Kind::kLiteral;
  char32_t ch = 0;

  static constexpr LikeToken literal(char32_t c) { return {Kind::kLiteral, c}; }
  static constexpr LikeToken any_run() { return {Kind::kAnyRun, kAnyRun}; }
  static constexpr LikeToken any_one() { return {Kind::kAnyOne, kAnyOne}; }

  bool is_literal() const noexcept { return kind == Kind::kLiteral; }
  friend bool operator==(const LikeToken&, const LikeToken&) = default;
};

/// A parsed SQL LIKE predicate. No escape character is supported: every `%` and `_`
/// is a wildcard.
struct LikePredicate {
  std::string raw;
  std::vector<LikeToken> tokens;
  bool anchored_prefix = true;
  bool anchored_suffix = true;

  std::size_t literal_count() const noexcept;
  /// Re-renders the tokens; equals `raw` for every parsed predicate.
  std::string render() const;
};

/// Throws InvalidPredicate on an empty string or malformed UTF-8.
LikePredicate parse_like(std::string_view utf8);

/// Estimation form of a predicate: `_` relaxed to `%`, consecutive `%` collapsed,
/// leading and trailing `%` dropped. Returns nullopt when no literal remains; such a
/// predicate matches every row.
std::optional<PositionalPattern> canonicalize(std::span<const LikeToken> tokens);
std::optional<PositionalPattern> canonicalize(const LikePredicate& predicate);

/// The literal characters of a pattern with all wildcards removed.
struct StripedSequence {
  Text chars;

  std::size_t size() const noexcept { return chars.size(); }
  friend bool operator==(const StripedSequence&, const StripedSequence&) = default;
};

StripedSequence striped(const PositionalPattern& pattern);

/// Subsequence test: `s` embeds into `q` at strictly increasing positions.
bool properly_contains(const StripedSequence& q, const StripedSequence& s);

/// End offset (one past the last character) of the leftmost-ending match of `pattern`
/// in `row[from..]`, or nullopt.
std::optional<std::size_t> first_match_end(const PositionalPattern& pattern, TextView row,
                                           std::size_t from = 0);

/// Positional containment of `pattern` in `row`.
bool row_matches(const PositionalPattern& pattern, TextView row);

/// Full SQL LIKE semantics including anchoring and `_`. Ground truth only.
bool like_matches(const LikePredicate& predicate, TextView row);
bool like_matches(std::span<const LikeToken> tokens, TextView row);

/// Striped containment: `r`'s literals form a subsequence of `p`'s literals.
/// Adjacency is ignored.
bool pattern_contains(const PositionalPattern& p, const PositionalPattern& r);

/// Adjacency-aware refinement: every run of `general` is assigned, in order, to a
/// non-overlapping substring occurrence inside the runs of `specific`. When true,
/// every row matching `specific` also matches `general`.
bool pattern_subsumes(const PositionalPattern& general, const PositionalPattern& specific);

/// Stricter variant of pattern_subsumes used for encapsulated estimation: each run
/// of `general` must be a prefix of its own run of `specific`, runs assigned in
/// strictly increasing order. Implies pattern_subsumes.
bool anchored_subsumes(const PositionalPattern& general, const PositionalPattern& specific);

}  // namespace psph
