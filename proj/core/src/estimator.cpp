#include "psph/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "psph/error.hpp"

namespace psph {

std::string to_string(MatchCase c) {
  switch (c) {
    case MatchCase::kExact: return "EXACT";
    case MatchCase::kEncapsulated: return "ENCAPSULATED";
    case MatchCase::kPartitioned: return "PARTITIONED";
    case MatchCase::kNoMatch: return "NO_MATCH";
    case MatchCase::kMatchAll: return "MATCH_ALL";
  }
  return "?";
}

Estimator::Estimator(Histogram histogram) : h_(std::move(histogram)) {
  if (h_.db_size == 0) throw ConfigError("histogram db_size must be positive");
  for (std::size_t i = 0; i < h_.buckets.size(); ++i) {
    exact_.emplace(h_.buckets[i].endpoint.render_text(), i);
  }
}

double Estimator::fraction(std::size_t frequency) const {
  return static_cast<double>(frequency) / static_cast<double>(h_.db_size);
}

std::optional<EndpointMatch> Estimator::exact_match(const PositionalPattern& p) const {
  const auto it = exact_.find(p.render_text());
  if (it == exact_.end()) return std::nullopt;
  const Bucket& b = h_.buckets[it->second];
  return EndpointMatch{b.frequency, {{b.endpoint, b.frequency, std::nullopt}}};
}

std::optional<EndpointMatch> Estimator::encapsulated_match(const PositionalPattern& p) const {
  std::optional<EndpointMatch> out;
  for (const auto& b : h_.buckets) {
    if (!anchored_subsumes(p, b.endpoint)) continue;
    if (!out) out = EndpointMatch{b.frequency, {}};
    out->frequency = std::min(out->frequency, b.frequency);
    out->witness.push_back({b.endpoint, b.frequency, std::nullopt});
  }
  return out;
}

PositionalPattern regular_form(const PositionalPattern& p) {
  std::vector<Text> runs;
  for (const auto& run : p.runs()) {
    for (char32_t c : run) runs.emplace_back(1, c);
  }
  return PositionalPattern(std::move(runs));
}

std::optional<EndpointMatch> Estimator::partition_match(const LikePredicate& predicate, double epsilon,
                                                        bool relax_adjacency) const {
  const std::span<const LikeToken> tokens(predicate.tokens);
  const double needed = static_cast<double>(predicate.literal_count()) - epsilon;
  std::optional<EndpointMatch> best;
  for (std::size_t split = 1; split < tokens.size(); ++split) {
    for (auto side : {tokens.first(split), tokens.subspan(split)}) {
      auto part = canonicalize(side);
      if (part && relax_adjacency) part = regular_form(*part);
      if (!part || static_cast<double>(part->literal_count()) < needed) continue;
      auto hit = exact_match(*part);
      if (!hit) hit = encapsulated_match(*part);
      if (!hit || (best && hit->frequency >= best->frequency)) continue;
      for (auto& w : hit->witness) w.part = *part;
      best = std::move(hit);
    }
  }
  return best;
}

double Estimator::no_match_estimate(const EstimatorConfig& cfg) const {
  const double t = cfg.t_percent.value_or(h_.t_percent);
  // One rounding only, so t=10, minsup=2, |D|=8 gives exactly 0.025.
  return t * static_cast<double>(h_.minsup_count) / (100.0 * static_cast<double>(h_.db_size));
}

EstimateResult Estimator::estimate(const LikePredicate& predicate, const EstimatorConfig& cfg) const {
  if (!(cfg.epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
  if (cfg.t_percent && !(*cfg.t_percent > 0.0 && *cfg.t_percent <= 100.0)) {
    throw ConfigError("t_percent must lie in (0, 100]");
  }
  auto p = canonicalize(predicate);
  if (!p) return {1.0, MatchCase::kMatchAll, {}};
  if (cfg.relax_adjacency) p = regular_form(*p);

  if (auto hit = exact_match(*p)) return {fraction(hit->frequency), MatchCase::kExact, std::move(hit->witness)};
  if (auto hit = encapsulated_match(*p)) {
    return {fraction(hit->frequency), MatchCase::kEncapsulated, std::move(hit->witness)};
  }
  if (cfg.partitioning_enabled) {
    if (auto hit = partition_match(predicate, cfg.epsilon, cfg.relax_adjacency)) {
      return {fraction(hit->frequency), MatchCase::kPartitioned, std::move(hit->witness)};
    }
  }
  return {no_match_estimate(cfg), MatchCase::kNoMatch, {}};
}

}  // namespace psph
