#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "psph/miner.hpp"

namespace psph {

struct Bucket {
  /// Running frequency sum at the moment the endpoint was selected.
  std::size_t endpoint_number = 0;
  PositionalPattern endpoint;
  std::size_t frequency = 0;

  friend bool operator==(const Bucket&, const Bucket&) = default;
};

struct Histogram {
  std::vector<Bucket> buckets;
  std::size_t db_size = 0;
  std::size_t minsup_count = 1;
  std::size_t bucket_count_requested = 1;
  /// Stored for the no-match estimate.
  double t_percent = 10.0;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct HistogramMeta {
  std::size_t db_size = 0;
  std::size_t minsup_count = 1;
  double t_percent = 10.0;
};

struct RedundancyConfig {
  /// Non-negative threshold on IC(R) - IC(P), natural-log units.
  double delta = 0.00216;
  bool enabled = true;
};

/// -ln(freq / db_size). Throws ConfigError unless 1 <= freq <= db_size.
double information_content(std::size_t freq, std::size_t db_size);

struct Removal {
  MinedPattern removed;
  /// A pattern of the input set whose literals contain `removed`'s literals with an
  /// information-content gain below delta.
  MinedPattern witness;
};

struct RedundancyResult {
  PatternSet kept;
  std::vector<Removal> removals;
};

/// True when `r` justifies dropping `p`: r != p, pattern_contains(r, p) and
/// 0 <= IC(r) - IC(p) < delta. When both directions hold (same literals, same IC),
/// only the pattern refining the other, or else the later-sorting one, is dropped.
bool is_redundancy_witness(const MinedPattern& r, const MinedPattern& p, double delta, std::size_t db_size);

/// Removes every pattern with a witness in the original input. Decisions do not
/// cascade, so the result does not depend on input order. `kept` is sorted.
RedundancyResult eliminate_redundant(const PatternSet& patterns, const RedundancyConfig& cfg, std::size_t db_size);

/// Sorts by rendering and picks endpoints with the running-sum capacity rule.
/// With more buckets than patterns every pattern becomes an endpoint.
/// Throws ConfigError for an empty pattern set or zero buckets.
Histogram build_histogram(PatternSet patterns, std::size_t bucket_count, const HistogramMeta& meta);

/// Catalog format:
///   PSPH-HISTOGRAM v1
///   db_size=<int>
///   minsup_count=<int>
///   t_percent=<float>
///   buckets=<int>
///   <endpoint number><TAB><pattern><TAB><frequency>
void save_histogram(std::ostream& out, const Histogram& h);
/// Throws FormatError with line diagnostics.
Histogram read_histogram(std::istream& in);
Histogram load_histogram(const std::filesystem::path& path);

}  // namespace psph
