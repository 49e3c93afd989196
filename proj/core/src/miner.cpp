#include "psph/miner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "psph/error.hpp"

namespace psph {

// ---------------------------------------------------------------------------
// Minsup

Minsup Minsup::absolute(long long count) {
  if (count < 1) throw ConfigError("minsup count must be at least 1");
  return Minsup(false, static_cast<double>(count));
}

Minsup Minsup::fraction(double value) {
  if (!(value > 0.0 && value <= 1.0)) throw ConfigError("minsup fraction must lie in (0, 1]");
  return Minsup(true, value);
}

Minsup Minsup::parse(const std::string& text) {
  if (text.empty()) throw ConfigError("empty minsup");
  try {
    std::size_t used = 0;
    if (text.back() == '%') {
      const std::string number = text.substr(0, text.size() - 1);
      const double pct = std::stod(number, &used);
      if (used != number.size()) throw ConfigError("malformed minsup '" + text + "'");
      return fraction(pct / 100.0);
    }
    if (text.find_first_of(".eE") != std::string::npos) {
      const double value = std::stod(text, &used);
      if (used != text.size()) throw ConfigError("malformed minsup '" + text + "'");
      return fraction(value);
    }
    const long long count = std::stoll(text, &used);
    if (used != text.size()) throw ConfigError("malformed minsup '" + text + "'");
    return absolute(count);
  } catch (const std::logic_error&) {
    throw ConfigError("malformed minsup '" + text + "'");
  }
}

std::size_t Minsup::resolve(std::size_t db_size) const {
  if (!is_fraction_) return static_cast<std::size_t>(value_);
  const double exact = value_ * static_cast<double>(db_size);
  const double nearest = std::round(exact);
  // 0.015 * 5000 is 75.00000000000001 in binary; that is still 75 rows.
  const double count = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
  return std::max<std::size_t>(1, static_cast<std::size_t>(count));
}

std::string to_string(PatternMode mode) {
  return mode == PatternMode::kPositional ? "POSITIONAL" : "REGULAR";
}

PatternMode parse_pattern_mode(const std::string& text) {
  std::string upper = text;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "POSITIONAL") return PatternMode::kPositional;
  if (upper == "REGULAR") return PatternMode::kRegular;
  throw ConfigError("unknown pattern mode '" + text + "'");
}

void sort_patterns(PatternSet& patterns) {
  std::vector<std::pair<Text, MinedPattern>> keyed;
  keyed.reserve(patterns.size());
  for (auto& p : patterns) keyed.emplace_back(p.pattern.render_text(), std::move(p));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  patterns.clear();
  for (auto& [key, p] : keyed) patterns.push_back(std::move(p));
}

// ---------------------------------------------------------------------------
// Projection primitives

ItemCounts frequent_length1(const SequenceDatabase& db, std::size_t minsup_count) {
  std::unordered_map<char32_t, std::size_t> counts;
  for (const auto& row : db.rows) {
    Text distinct = row;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (char32_t ch : distinct) {
      if (is_minable(ch)) ++counts[ch];
    }
  }
  ItemCounts out;
  for (const auto& [ch, n] : counts) {
    if (n >= minsup_count) out.emplace_back(ch, n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ProjectedDatabase project(const SequenceDatabase& db, const PositionalPattern& prefix) {
  ProjectedDatabase out{prefix, {}};
  for (std::size_t i = 0; i < db.rows.size(); ++i) {
    if (auto end = first_match_end(prefix, db.rows[i])) out.projections.push_back({i, *end});
  }
  return out;
}

ProjectedDatabase project(const SequenceDatabase& db, const ProjectedDatabase& parent,
                          const PositionalPattern& prefix) {
  ProjectedDatabase out{prefix, {}};
  for (const auto& proj : parent.projections) {
    if (auto end = first_match_end(prefix, db.rows[proj.row])) out.projections.push_back({proj.row, *end});
  }
  return out;
}

namespace {

// Earliest end of the prefix made of all runs but the last, i.e. where an occurrence
// of the last run may start.
std::size_t last_run_floor(const PositionalPattern& prefix, TextView row) {
  const auto& runs = prefix.runs();
  std::size_t pos = 0;
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) pos = row.find(runs[r], pos) + runs[r].size();
  return pos;
}

ItemCounts to_item_counts(const std::unordered_map<char32_t, std::size_t>& counts, std::size_t minsup_count) {
  ItemCounts out;
  for (const auto& [ch, n] : counts) {
    if (n >= minsup_count) out.emplace_back(ch, n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LocalItems local_frequent_items(const SequenceDatabase& db, const ProjectedDatabase& projected,
                                std::size_t minsup_count, PatternMode mode) {
  std::unordered_map<char32_t, std::size_t> gap;
  std::unordered_map<char32_t, std::size_t> adjacent;
  const Text& last = projected.prefix.runs().back();
  for (const auto& proj : projected.projections) {
    const TextView row = db.rows[proj.row];
    Text seen(row.substr(proj.offset));
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (char32_t ch : seen) {
      if (is_minable(ch)) ++gap[ch];
    }
    if (mode != PatternMode::kPositional) continue;
    Text next;
    for (auto p = row.find(last, last_run_floor(projected.prefix, row)); p != TextView::npos;
         p = row.find(last, p + 1)) {
      if (p + last.size() < row.size()) next.push_back(row[p + last.size()]);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (char32_t ch : next) {
      if (is_minable(ch)) ++adjacent[ch];
    }
  }
  return {to_item_counts(gap, minsup_count), to_item_counts(adjacent, minsup_count)};
}

std::vector<Extension> closure_extend(std::optional<std::size_t> gap_freq,
                                      std::optional<std::size_t> adjacent_freq, std::size_t minsup_count) {
  const bool gap_ok = gap_freq && *gap_freq >= minsup_count;
  const bool adjacent_ok = adjacent_freq && *adjacent_freq >= minsup_count;
  if (gap_ok && adjacent_ok) {
    if (*gap_freq == *adjacent_freq) return {Extension::kAdjacent};
    return {Extension::kGap, Extension::kAdjacent};
  }
  if (gap_ok) return {Extension::kGap};
  if (adjacent_ok) return {Extension::kAdjacent};
  return {};
}

// ---------------------------------------------------------------------------
// Depth-first miner

namespace {

using Sym = std::uint32_t;

/// Rows re-encoded as dense symbol ids in code-point order, for counting.
struct SymbolTable {
  std::vector<char32_t> alphabet;
  std::vector<bool> minable;
  std::vector<std::vector<Sym>> rows;

  explicit SymbolTable(const SequenceDatabase& db) : alphabet(db.alphabet()) {
    std::unordered_map<char32_t, Sym> index;
    for (Sym s = 0; s < alphabet.size(); ++s) {
      index.emplace(alphabet[s], s);
      minable.push_back(is_minable(alphabet[s]));
    }
    rows.reserve(db.rows.size());
    for (const auto& row : db.rows) {
      std::vector<Sym> ids;
      ids.reserve(row.size());
      for (char32_t ch : row) ids.push_back(index.at(ch));
      rows.push_back(std::move(ids));
    }
  }

  std::size_t size() const noexcept { return alphabet.size(); }
};

/// Running intersection of per-row symbol sets: a symbol survives while it has been
/// seen in every row offered so far.
class CommonSymbols {
 public:
  explicit CommonSymbols(std::size_t alphabet_size) : hits_(alphabet_size, 0), stamp_(alphabet_size, 0) {}

  void reset() {
    ++epoch_;
    rows_ = 0;
    alive_ = true;
  }

  /// Starts a new row.
  void next_row() {
    ++rows_;
    ++row_stamp_;
  }

  void add(Sym s) {
    if (stamp_[s] == row_stamp_) return;
    stamp_[s] = row_stamp_;
    if (rows_ == 1) {
      if (epoch_of_.size() != hits_.size()) epoch_of_.assign(hits_.size(), 0);
      epoch_of_[s] = epoch_;
      hits_[s] = 1;
    } else if (epoch_of_[s] == epoch_ && hits_[s] + 1 == rows_) {
      hits_[s] = rows_;
    }
  }

  /// Closes the current row; returns false once no symbol can survive.
  bool end_row() {
    if (rows_ == 1) {
      candidates_.clear();
      for (Sym s = 0; s < hits_.size(); ++s) {
        if (epoch_of_.size() == hits_.size() && epoch_of_[s] == epoch_ && hits_[s] == 1) candidates_.push_back(s);
      }
    } else {
      std::erase_if(candidates_, [&](Sym s) { return hits_[s] != rows_; });
    }
    alive_ = !candidates_.empty();
    return alive_;
  }

  bool any() const noexcept { return alive_ && rows_ > 0; }

 private:
  std::vector<std::uint32_t> hits_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint64_t> epoch_of_;
  std::vector<Sym> candidates_;
  std::uint64_t epoch_ = 0;
  std::uint64_t row_stamp_ = 0;
  std::uint32_t rows_ = 0;
  bool alive_ = true;
};

/// Per-row anchors of a pattern with k runs:
///   first_end[r]   earliest end of runs[0..r)            (r = 0..k)
///   late_start[r]  latest start of run r when runs[r..k) are packed against the row end
///   frame_start[r] latest start of run r inside the first instance (row[0, first_end[k]))
struct Anchors {
  std::vector<std::size_t> first_end;
  std::vector<std::size_t> late_start;
  std::vector<std::size_t> frame_start;

  void compute(const std::vector<Text>& runs, TextView row, bool with_frame, bool with_late) {
    const std::size_t k = runs.size();
    first_end.assign(k + 1, 0);
    for (std::size_t r = 0; r < k; ++r) first_end[r + 1] = row.find(runs[r], first_end[r]) + runs[r].size();
    if (with_late) late_start = pack_right(runs, row, row.size());
    if (with_frame) frame_start = pack_right(runs, row, first_end[k]);
  }

  static std::vector<std::size_t> pack_right(const std::vector<Text>& runs, TextView row, std::size_t limit) {
    std::vector<std::size_t> starts(runs.size(), 0);
    for (std::size_t r = runs.size(); r-- > 0;) {
      starts[r] = row.rfind(runs[r], limit - runs[r].size());
      limit = starts[r];
    }
    return starts;
  }
};

class DepthFirstMiner {
 public:
  DepthFirstMiner(const SequenceDatabase& db, const MinerConfig& cfg, std::size_t minsup)
      : db_(db), cfg_(cfg), minsup_(minsup), symbols_(db), common_(symbols_.size()) {}

  PatternSet run() {
    std::vector<std::vector<std::uint32_t>> support(symbols_.size());
    std::vector<std::uint64_t> seen(symbols_.size(), 0);
    for (std::uint32_t i = 0; i < symbols_.rows.size(); ++i) {
      for (Sym s : symbols_.rows[i]) {
        if (seen[s] == i + 1ULL) continue;
        seen[s] = i + 1ULL;
        support[s].push_back(i);
      }
    }
    for (Sym s = 0; s < symbols_.size(); ++s) {
      if (!symbols_.minable[s] || support[s].size() < minsup_) continue;
      std::vector<Text> runs{Text(1, symbols_.alphabet[s])};
      grow(runs, support[s]);
    }
    sort_patterns(out_);
    return std::move(out_);
  }

  /// Closedness of `runs` over the given supporting rows.
  bool is_closed(const std::vector<Text>& runs, const std::vector<std::uint32_t>& rows) {
    return !has_equal_support_refinement(runs, rows);
  }

 private:
  bool positional() const { return cfg_.mode == PatternMode::kPositional; }

  void grow(std::vector<Text>& runs, const std::vector<std::uint32_t>& rows) {
    if (cfg_.pruning == BackScan::kOn) {
      if (backscan_prunable(runs, rows)) return;
      if (cfg_.report == Report::kClosed && positional() && forced_adjacency(runs, rows)) return;
    }

    if (cfg_.report == Report::kSearchFrontier || is_closed(runs, rows)) {
      out_.push_back({PositionalPattern(runs), rows.size()});
    }

    std::size_t literals = 0;
    for (const auto& run : runs) literals += run.size();
    if (cfg_.max_pattern_literals && literals >= *cfg_.max_pattern_literals) return;

    const std::size_t alpha = symbols_.size();
    std::vector<std::vector<std::uint32_t>> gap_rows(alpha);
    std::vector<std::vector<std::uint32_t>> adjacent_rows(alpha);
    std::vector<std::uint64_t> stamp(alpha, 0);
    std::vector<std::uint64_t> adjacent_stamp(alpha, 0);
    const Text& last = runs.back();
    for (std::uint32_t row_index : rows) {
      const TextView row = db_.rows[row_index];
      const auto& ids = symbols_.rows[row_index];
      anchors_.compute(runs, row, false, false);
      const std::uint64_t tag = row_index + 1ULL;
      for (std::size_t p = anchors_.first_end.back(); p < ids.size(); ++p) {
        const Sym s = ids[p];
        if (stamp[s] == tag) continue;
        stamp[s] = tag;
        gap_rows[s].push_back(row_index);
      }
      if (!positional()) continue;
      const std::size_t floor = anchors_.first_end[runs.size() - 1];
      for (auto p = row.find(last, floor); p != TextView::npos; p = row.find(last, p + 1)) {
        const std::size_t next = p + last.size();
        if (next >= ids.size()) break;
        const Sym s = ids[next];
        if (adjacent_stamp[s] == tag) continue;
        adjacent_stamp[s] = tag;
        adjacent_rows[s].push_back(row_index);
      }
    }

    for (Sym s = 0; s < alpha; ++s) {
      if (!symbols_.minable[s]) continue;
      const std::size_t gap_freq = gap_rows[s].size();
      const std::size_t adjacent_freq = adjacent_rows[s].size();
      std::vector<Extension> moves;
      if (cfg_.report == Report::kSearchFrontier) {
        moves = closure_extend(gap_freq, positional() ? std::optional<std::size_t>(adjacent_freq) : std::nullopt,
                               minsup_);
      } else {
        if (adjacent_freq >= minsup_) moves.push_back(Extension::kAdjacent);
        if (gap_freq >= minsup_) moves.push_back(Extension::kGap);
      }
      for (Extension move : moves) {
        const char32_t ch = symbols_.alphabet[s];
        if (move == Extension::kAdjacent) {
          runs.back().push_back(ch);
          grow(runs, adjacent_rows[s]);
          runs.back().pop_back();
        } else {
          runs.emplace_back(1, ch);
          grow(runs, gap_rows[s]);
          runs.pop_back();
        }
      }
    }
  }

  /// BackScan: some symbol occurs, in every supporting row, between the first instance
  /// of runs[0..r) and the start of run r within the first instance of the pattern.
  /// Inserting it as a new run before run r then keeps the support of this pattern and
  /// of every pattern grown from it, so none of them can be closed.
  bool backscan_prunable(const std::vector<Text>& runs, const std::vector<std::uint32_t>& rows) {
    const std::size_t k = runs.size();
    frames_.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const TextView row = db_.rows[rows[i]];
      anchors_.compute(runs, row, true, false);
      frames_[i].first_end = anchors_.first_end;
      frames_[i].frame_start = anchors_.frame_start;
    }
    for (std::size_t r = 0; r < k; ++r) {
      common_.reset();
      bool alive = true;
      for (std::size_t i = 0; i < rows.size() && alive; ++i) {
        const auto& ids = symbols_.rows[rows[i]];
        common_.next_row();
        for (std::size_t p = frames_[i].first_end[r]; p < frames_[i].frame_start[r]; ++p) {
          if (symbols_.minable[ids[p]]) common_.add(ids[p]);
        }
        alive = common_.end_row();
      }
      if (alive && common_.any()) return true;
    }
    return false;
  }

  /// Some gap before a run other than the last is empty in the leftmost match of every
  /// supporting row: run r starts exactly where run r-1 ends. Growth never touches
  /// runs 0..k-2 and leftmost matches of a prefix do not change when the pattern
  /// grows, so merging the two runs keeps the support of this pattern and of
  /// everything grown from it. (The last run may still be extended, which can move
  /// its leftmost match, so its gap is left to the closedness check.)
  bool forced_adjacency(const std::vector<Text>& runs, const std::vector<std::uint32_t>& rows) {
    const std::size_t k = runs.size() - 1;
    if (k < 2) return false;
    std::vector<bool> forced(k, true);
    forced[0] = false;
    std::size_t open = k - 1;
    for (std::uint32_t row_index : rows) {
      const TextView row = db_.rows[row_index];
      std::size_t end = 0;
      for (std::size_t r = 0; r < k; ++r) {
        const std::size_t start = row.find(runs[r], end);
        if (r > 0 && forced[r] && start != end) {
          forced[r] = false;
          if (--open == 0) return false;
        }
        end = start + runs[r].size();
      }
    }
    return true;
  }

  bool has_equal_support_refinement(const std::vector<Text>& runs, const std::vector<std::uint32_t>& rows) {
    const std::size_t k = runs.size();
    frames_.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      anchors_.compute(runs, db_.rows[rows[i]], false, true);
      frames_[i].first_end = anchors_.first_end;
      frames_[i].late_start = anchors_.late_start;
    }
    auto late = [&](std::size_t i, std::size_t r) {
      return r < k ? frames_[i].late_start[r] : db_.rows[rows[i]].size();
    };

    // A new single-literal run in slot s (before run s; s == k appends).
    for (std::size_t s = 0; s <= k; ++s) {
      if (intersect_rows(rows, [&](std::size_t i, const std::vector<Sym>& ids) {
            for (std::size_t p = frames_[i].first_end[s]; p < late(i, s); ++p) {
              if (symbols_.minable[ids[p]]) common_.add(ids[p]);
            }
          })) {
        return true;
      }
    }
    if (!positional()) return false;

    for (std::size_t r = 0; r < k; ++r) {
      const Text& run = runs[r];
      // Run r extended by one literal on the right.
      if (intersect_rows(rows, [&](std::size_t i, const std::vector<Sym>& ids) {
            const TextView row = db_.rows[rows[i]];
            const std::size_t hi = late(i, r + 1);
            for (auto p = row.find(run, frames_[i].first_end[r]); p != TextView::npos && p + run.size() < hi;
                 p = row.find(run, p + 1)) {
              const Sym s = ids[p + run.size()];
              if (symbols_.minable[s]) common_.add(s);
            }
          })) {
        return true;
      }
      // Run r extended by one literal on the left.
      if (intersect_rows(rows, [&](std::size_t i, const std::vector<Sym>& ids) {
            const TextView row = db_.rows[rows[i]];
            const std::size_t hi = late(i, r + 1);
            for (auto p = row.find(run, frames_[i].first_end[r] + 1); p != TextView::npos && p + run.size() <= hi;
                 p = row.find(run, p + 1)) {
              const Sym s = ids[p - 1];
              if (symbols_.minable[s]) common_.add(s);
            }
          })) {
        return true;
      }
    }
    // Two neighbouring runs merged.
    for (std::size_t r = 0; r + 1 < k; ++r) {
      const Text merged = runs[r] + runs[r + 1];
      bool all = true;
      for (std::size_t i = 0; i < rows.size() && all; ++i) {
        const TextView row = db_.rows[rows[i]];
        const auto p = row.find(merged, frames_[i].first_end[r]);
        all = p != TextView::npos && p + merged.size() <= late(i, r + 2);
      }
      if (all) return true;
    }
    return false;
  }

  template <typename Collect>
  bool intersect_rows(const std::vector<std::uint32_t>& rows, Collect&& collect) {
    common_.reset();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      common_.next_row();
      collect(i, symbols_.rows[rows[i]]);
      if (!common_.end_row()) return false;
    }
    return common_.any();
  }

  struct Frame {
    std::vector<std::size_t> first_end;
    std::vector<std::size_t> frame_start;
    std::vector<std::size_t> late_start;
  };

  const SequenceDatabase& db_;
  const MinerConfig& cfg_;
  std::size_t minsup_;
  SymbolTable symbols_;
  CommonSymbols common_;
  Anchors anchors_;
  std::vector<Frame> frames_;
  PatternSet out_;
};

std::size_t checked_minsup(const SequenceDatabase& db, const MinerConfig& cfg) {
  if (db.empty()) throw ConfigError("cannot mine an empty database");
  if (cfg.max_pattern_literals && *cfg.max_pattern_literals == 0) {
    throw ConfigError("max_pattern_literals must be positive");
  }
  return cfg.minsup.resolve(db.size());
}

}  // namespace

bool closed_check(const SequenceDatabase& db, const PositionalPattern& pattern, PatternMode mode) {
  if (db.empty()) return true;
  MinerConfig cfg;
  cfg.mode = mode;
  std::vector<std::uint32_t> rows;
  for (std::uint32_t i = 0; i < db.rows.size(); ++i) {
    if (row_matches(pattern, db.rows[i])) rows.push_back(i);
  }
  if (rows.empty()) return true;
  DepthFirstMiner miner(db, cfg, 1);
  return miner.is_closed(pattern.runs(), rows);
}

PatternSet mine(const SequenceDatabase& db, const MinerConfig& cfg) {
  const std::size_t minsup = checked_minsup(db, cfg);
  if (minsup > db.size()) return {};
  return DepthFirstMiner(db, cfg, minsup).run();
}

}  // namespace psph
