#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <vector>

#include "psph/pattern.hpp"

namespace psph {

struct WorkloadSpec {
  std::size_t count = 100;
  std::size_t min_word_length = 5;
  std::size_t max_word_length = 12;
  std::size_t min_underscores = 0;
  std::size_t max_underscores = 2;
  /// Upper bound on literals plus `_` in a group-1 predicate.
  std::size_t max_group1_length = 17;
  /// Characters deleted from a row are drawn from [min_removed, len - min_kept].
  std::size_t min_removed = 3;
  std::size_t min_kept = 3;
  std::size_t min_percent_group2 = 2;
  std::size_t max_percent_group2 = 8;
  std::size_t min_percent_group3 = 1;
  std::size_t max_percent_group3 = 3;
  std::uint64_t seed = 1;
};

/// Seeded source with draws that do not depend on the standard library's
/// distribution implementations, so query files are identical across toolchains.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);
  /// Uniform real in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

/// `%w%` or `%w1%w2%`, words taken in order from one row, each with 0-2 characters
/// replaced by `_`. Throws GenerationError when no row holds a suitable word.
std::vector<LikePredicate> gen_group1(const SequenceDatabase& db, const WorkloadSpec& spec);
/// A row with some characters deleted and 2-8 `%` inserted, wrapped in `%`.
/// Throws GenerationError when no row is long enough.
std::vector<LikePredicate> gen_group2(const SequenceDatabase& db, const WorkloadSpec& spec);
/// `spec.count` candidates built like group 2 with 1-3 `%`; only those matching no row
/// are kept.
std::vector<LikePredicate> gen_group3(const SequenceDatabase& db, const WorkloadSpec& spec);

struct Query {
  int group = 1;
  LikePredicate predicate;
};

struct Workload {
  std::vector<Query> queries;
};

/// Query file: one LIKE pattern per line. Lines starting with `#` are comments; a
/// `# group=N` comment sets the group of the queries below it (default 1). Blank
/// lines are skipped. Throws FormatError.
Workload read_queries(std::istream& in);
Workload load_queries(const std::filesystem::path& path);
void write_queries(std::ostream& out, int group, const std::vector<LikePredicate>& queries);

}  // namespace psph
