#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "psph/histogram.hpp"

namespace psph {

enum class MatchCase { kExact, kEncapsulated, kPartitioned, kNoMatch, kMatchAll };

std::string to_string(MatchCase c);

struct EstimatorConfig {
  /// Parts of a split predicate with fewer than n - epsilon literals are ignored.
  double epsilon = 1.0;
  /// No-match fraction in percent of minsup; nullopt uses the catalog's value.
  std::optional<double> t_percent;
  bool partitioning_enabled = true;
  /// For catalogs mined in regular mode: every literal of the predicate (and of each
  /// part) is separated by a gap before matching.
  bool relax_adjacency = false;
};

/// One endpoint that contributed to an estimate. `part` is set for partitioned matches.
struct WitnessEntry {
  PositionalPattern endpoint;
  std::size_t frequency = 0;
  std::optional<PositionalPattern> part;
};

struct EstimateResult {
  double selectivity = 0.0;
  MatchCase match_case = MatchCase::kNoMatch;
  std::vector<WitnessEntry> witness;
};

/// Endpoint frequency together with the endpoints it came from.
struct EndpointMatch {
  std::size_t frequency = 0;
  std::vector<WitnessEntry> witness;
};

/// Selectivity estimator over an immutable histogram. Every predicate is treated as
/// unanchored and `_` is relaxed to `%`.
class Estimator {
 public:
  explicit Estimator(Histogram histogram);

  const Histogram& histogram() const noexcept { return h_; }

  /// Throws ConfigError for a negative epsilon or t_percent outside (0, 100].
  EstimateResult estimate(const LikePredicate& predicate, const EstimatorConfig& cfg = {}) const;

  std::optional<EndpointMatch> exact_match(const PositionalPattern& p) const;
  /// Minimum frequency over the endpoints that `p` generalises (anchored_subsumes).
  std::optional<EndpointMatch> encapsulated_match(const PositionalPattern& p) const;
  /// Minimum matched frequency over every split of the raw predicate.
  std::optional<EndpointMatch> partition_match(const LikePredicate& predicate, double epsilon,
                                               bool relax_adjacency = false) const;
  double no_match_estimate(const EstimatorConfig& cfg = {}) const;

 private:
  double fraction(std::size_t frequency) const;

  Histogram h_;
  std::unordered_map<Text, std::size_t> exact_;
};

/// `p` with every run split into single-literal runs (its regular form).
PositionalPattern regular_form(const PositionalPattern& p);

inline EstimateResult estimate(const LikePredicate& predicate, const Histogram& h, const EstimatorConfig& cfg = {}) {
  return Estimator(h).estimate(predicate, cfg);
}

}  // namespace psph
