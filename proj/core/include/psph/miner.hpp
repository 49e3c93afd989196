#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psph/pattern.hpp"

namespace psph {

enum class PatternMode {
  kPositional,  ///< runs of adjacent literals separated by gaps
  kRegular,     ///< every literal separated by a gap (classic sequential patterns)
};

enum class BackScan { kOn, kOff };

/// Which nodes of the depth-first search are reported.
enum class Report {
  /// Closed patterns: no pattern refining it (pattern_subsumes) has equal support.
  kClosed,
  /// Every frequent prefix the search visits: survivors of BackScan pruning and, in
  /// positional mode, of the equal-frequency adjacency rule. This is the listing the
  /// algorithm produces before the closure filter.
  kSearchFrontier,
};

/// Minimum support as an absolute row count or a fraction of |D| in (0, 1].
class Minsup {
 public:
  static Minsup absolute(long long count);
  static Minsup fraction(double value);
  /// Accepts "N" (absolute) or "X%" (percent of rows). Throws ConfigError.
  static Minsup parse(const std::string& text);

  /// Row count threshold; a fraction resolves to ceil(fraction * db_size).
  std::size_t resolve(std::size_t db_size) const;

  bool is_fraction() const noexcept { return is_fraction_; }
  double value() const noexcept { return value_; }

 private:
  Minsup(bool is_fraction, double value) : is_fraction_(is_fraction), value_(value) {}
  bool is_fraction_;
  double value_;
};

struct MinerConfig {
  Minsup minsup = Minsup::absolute(1);
  PatternMode mode = PatternMode::kPositional;
  BackScan pruning = BackScan::kOn;
  Report report = Report::kClosed;
  /// Patterns longer than this many literals are neither explored nor reported.
  std::optional<std::size_t> max_pattern_literals;
};

struct MinedPattern {
  PositionalPattern pattern;
  std::size_t frequency = 0;

  friend bool operator==(const MinedPattern&, const MinedPattern&) = default;
};

/// A mined pattern set, sorted by compare_rendered.
using PatternSet = std::vector<MinedPattern>;

void sort_patterns(PatternSet& patterns);

/// Pseudo-projection: each supporting row is represented by its index and the offset
/// just past the first instance of the prefix.
struct ProjectedDatabase {
  struct Projection {
    std::size_t row = 0;
    std::size_t offset = 0;
  };

  PositionalPattern prefix;
  std::vector<Projection> projections;

  std::size_t support() const noexcept { return projections.size(); }
};

/// (character, row count) pairs in code-point order.
using ItemCounts = std::vector<std::pair<char32_t, std::size_t>>;

/// Every minable character occurring in at least `minsup_count` distinct rows.
ItemCounts frequent_length1(const SequenceDatabase& db, std::size_t minsup_count);

/// Projects every row of `db` that contains `prefix`.
ProjectedDatabase project(const SequenceDatabase& db, const PositionalPattern& prefix);
/// Projects only the rows already supporting `parent`; `prefix` must refine it.
ProjectedDatabase project(const SequenceDatabase& db, const ProjectedDatabase& parent,
                          const PositionalPattern& prefix);

struct LocalItems {
  /// Items occurring anywhere in the projections: grow the prefix with `P%x`.
  ItemCounts gap;
  /// Items immediately following an occurrence of the prefix's last run: grow with `Px`.
  /// Counted over every embedding of the prefix, not only the first instance.
  ItemCounts adjacent;
};

LocalItems local_frequent_items(const SequenceDatabase& db, const ProjectedDatabase& projected,
                                std::size_t minsup_count, PatternMode mode = PatternMode::kPositional);

enum class Extension { kGap, kAdjacent };

/// Growth decision for one item seen with `gap_freq` (group one) and `adjacent_freq`
/// (group two). Equal frequencies keep only the adjacent growth.
std::vector<Extension> closure_extend(std::optional<std::size_t> gap_freq,
                                      std::optional<std::size_t> adjacent_freq,
                                      std::size_t minsup_count);

/// True iff no one-step refinement of `pattern` (new run, run extended on either side,
/// two runs merged; regular mode: new run only) has the same support in `db`.
bool closed_check(const SequenceDatabase& db, const PositionalPattern& pattern,
                  PatternMode mode = PatternMode::kPositional);

/// Mines frequent patterns per `cfg`. Empty when the resolved minsup exceeds |D|.
/// Throws ConfigError for an empty database or an invalid minsup.
PatternSet mine(const SequenceDatabase& db, const MinerConfig& cfg);

/// Exhaustive reference miner. Enumerates every frequent pattern by level-wise growth,
/// counts support with row_matches over all rows, and applies the report rule by
/// pairwise comparison. Intended for small databases only.
struct ReferenceMinerLimits {
  std::size_t max_pattern_literals = 10;
  /// Upper bound on frequent patterns enumerated before giving up.
  std::size_t budget = 2'000'000;
};

/// Throws BudgetExceeded when the enumeration outgrows `limits.budget`.
/// `cfg.max_pattern_literals`, when set, overrides `limits.max_pattern_literals`.
PatternSet brute_force_mine(const SequenceDatabase& db, const MinerConfig& cfg,
                            const ReferenceMinerLimits& limits = {});

std::string to_string(PatternMode mode);
PatternMode parse_pattern_mode(const std::string& text);

}  // namespace psph
