#include "psph/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <ostream>

#include "format_util.hpp"
#include "psph/error.hpp"

namespace psph {

TrueSelectivity true_selectivity(const LikePredicate& predicate, const SequenceDatabase& db) {
  if (db.empty()) return {};
  std::size_t count = 0;
  for (const auto& row : db.rows) count += like_matches(predicate, row) ? 1 : 0;
  return {count, static_cast<double>(count) / static_cast<double>(db.size())};
}

std::optional<double> relative_error(double f_true, double f_est) {
  if (f_true == 0.0) return std::nullopt;
  return std::abs(f_true - f_est) / f_true;
}

double absolute_error(double f_true, double f_est) { return std::abs(f_est - f_true); }

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRelative: return "relative";
    case ErrorKind::kAbsolute: return "absolute";
    case ErrorKind::kExcluded: return "excluded";
  }
  return "?";
}

bool is_positive_group(int group) noexcept { return group == 1 || group == 2; }

std::vector<GroupAggregate> aggregate(const std::vector<QueryRecord>& records) {
  struct Sums {
    GroupAggregate agg;
    double relative = 0.0;
    std::size_t n_relative = 0;
    double absolute = 0.0;
    std::size_t n_absolute = 0;
    double seconds = 0.0;
  };
  std::map<int, Sums> by_group;
  for (const auto& r : records) {
    auto& s = by_group[r.group];
    s.agg.group = r.group;
    ++s.agg.queries;
    s.seconds += r.estimate_seconds;
    switch (r.error_kind) {
      case ErrorKind::kExcluded: ++s.agg.excluded; break;
      case ErrorKind::kRelative: s.relative += *r.error_value; ++s.n_relative; break;
      case ErrorKind::kAbsolute: s.absolute += *r.error_value; ++s.n_absolute; break;
    }
  }
  std::vector<GroupAggregate> out;
  for (auto& [group, s] : by_group) {
    if (s.n_relative > 0) s.agg.mean_relative_error = s.relative / static_cast<double>(s.n_relative);
    if (s.n_absolute > 0) s.agg.mean_absolute_error = s.absolute / static_cast<double>(s.n_absolute);
    s.agg.mean_estimate_seconds = s.seconds / static_cast<double>(s.agg.queries);
    out.push_back(s.agg);
  }
  return out;
}

EvaluationReport evaluate(const Workload& workload, const SequenceDatabase& db, const Histogram& h,
                          const EvaluationConfig& cfg) {
  if (h.db_size != db.size()) {
    throw ConsistencyError("catalog was built for " + std::to_string(h.db_size) + " rows but the dataset has " +
                           std::to_string(db.size()));
  }
  const Estimator estimator(h);
  EvaluationReport report;
  for (const auto& q : workload.queries) {
    QueryRecord rec;
    rec.group = q.group;
    rec.pattern = q.predicate.raw;

    const auto start = std::chrono::steady_clock::now();
    const EstimateResult est = estimator.estimate(q.predicate, cfg.estimator);
    rec.estimate_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.est_selectivity = est.selectivity;
    rec.match_case = est.match_case;

    const TrueSelectivity truth = true_selectivity(q.predicate, db);
    rec.true_count = truth.count;
    if (is_positive_group(q.group)) {
      if (truth.count <= cfg.exclusion_threshold) {
        rec.error_kind = ErrorKind::kExcluded;
      } else {
        rec.error_kind = ErrorKind::kRelative;
        rec.error_value = relative_error(truth.fraction, est.selectivity);
      }
    } else {
      rec.error_kind = ErrorKind::kAbsolute;
      rec.error_value = absolute_error(truth.fraction, est.selectivity);
    }
    report.records.push_back(std::move(rec));
  }
  report.aggregates = aggregate(report.records);
  return report;
}

void write_report(std::ostream& out, const EvaluationReport& report, bool with_timing) {
  using detail::format_number;
  out << "group\tpattern\ttrue_count\test_selectivity\tmatch_case\terror_kind\terror_value\n";
  for (const auto& r : report.records) {
    out << r.group << '\t' << r.pattern << '\t' << r.true_count << '\t' << format_number(r.est_selectivity) << '\t'
        << to_string(r.match_case) << '\t' << to_string(r.error_kind) << '\t'
        << (r.error_value ? format_number(*r.error_value) : "NA") << '\n';
  }
  for (const auto& a : report.aggregates) {
    out << "#AGG\tgroup=" << a.group << "\tqueries=" << a.queries << "\texcluded=" << a.excluded;
    if (a.mean_relative_error) out << "\tmean_relative_error=" << format_number(*a.mean_relative_error);
    if (a.mean_absolute_error) out << "\tmean_absolute_error=" << format_number(*a.mean_absolute_error);
    out << '\n';
  }
  if (with_timing) {
    for (const auto& a : report.aggregates) {
      out << "#TIME\tgroup=" << a.group << "\tmean_estimate_seconds=" << format_number(a.mean_estimate_seconds)
          << '\n';
    }
  }
}

}  // namespace psph
