#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psph/estimator.hpp"
#include "psph/workload.hpp"

namespace psph {

struct TrueSelectivity {
  std::size_t count = 0;
  double fraction = 0.0;
};

/// Full scan with exact LIKE semantics. An empty database gives (0, 0).
TrueSelectivity true_selectivity(const LikePredicate& predicate, const SequenceDatabase& db);

/// |f_true - f_est| / f_true, or nullopt when f_true is 0 (use absolute_error instead).
std::optional<double> relative_error(double f_true, double f_est);
double absolute_error(double f_true, double f_est);

enum class ErrorKind { kRelative, kAbsolute, kExcluded };

std::string to_string(ErrorKind kind);

struct QueryRecord {
  int group = 1;
  std::string pattern;
  std::size_t true_count = 0;
  double est_selectivity = 0.0;
  MatchCase match_case = MatchCase::kNoMatch;
  ErrorKind error_kind = ErrorKind::kExcluded;
  /// Unset for excluded queries.
  std::optional<double> error_value;
  double estimate_seconds = 0.0;
};

struct GroupAggregate {
  int group = 1;
  std::size_t queries = 0;
  std::size_t excluded = 0;
  /// Mean over the non-excluded records of the group's error kind.
  std::optional<double> mean_relative_error;
  std::optional<double> mean_absolute_error;
  double mean_estimate_seconds = 0.0;
};

struct EvaluationReport {
  std::vector<QueryRecord> records;
  std::vector<GroupAggregate> aggregates;  ///< ascending group id
};

struct EvaluationConfig {
  EstimatorConfig estimator;
  /// Positive-group queries whose true count is at most this are excluded.
  std::size_t exclusion_threshold = 10;
};

/// Groups 1 and 2 are positive (relative error, exclusion rule); every other group is
/// negative (absolute error, never excluded). Throws ConsistencyError when the
/// catalog's db_size differs from the dataset's row count.
EvaluationReport evaluate(const Workload& workload, const SequenceDatabase& db, const Histogram& h,
                          const EvaluationConfig& cfg = {});

/// Recomputes the aggregates of `records`; evaluate() uses the same routine.
std::vector<GroupAggregate> aggregate(const std::vector<QueryRecord>& records);

bool is_positive_group(int group) noexcept;

/// TSV with a header row, one line per query, then `#AGG` lines. Timing goes to
/// `#TIME` lines only when `with_timing` is set, keeping the default output
/// deterministic.
void write_report(std::ostream& out, const EvaluationReport& report, bool with_timing = false);

}  // namespace psph
