#include "psph/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <fstream>
#include <ostream>

#include "format_util.hpp"
#include "psph/error.hpp"

namespace psph {

double information_content(std::size_t freq, std::size_t db_size) {
  if (freq == 0 || db_size == 0 || freq > db_size) {
    throw ConfigError("information content needs 1 <= freq <= db_size");
  }
  return -std::log(static_cast<double>(freq) / static_cast<double>(db_size));
}

bool is_redundancy_witness(const MinedPattern& r, const MinedPattern& p, double delta, std::size_t db_size) {
  if (r.pattern == p.pattern || !pattern_contains(r.pattern, p.pattern)) return false;
  const double gain = information_content(r.frequency, db_size) - information_content(p.frequency, db_size);
  if (gain < 0.0 || gain >= delta) return false;
  if (gain == 0.0 && pattern_contains(p.pattern, r.pattern)) {
    // Same literals, same support: keep exactly one of the two.
    if (pattern_subsumes(p.pattern, r.pattern)) return true;
    if (pattern_subsumes(r.pattern, p.pattern)) return false;
    return compare_rendered(r.pattern, p.pattern) < 0;
  }
  return true;
}

RedundancyResult eliminate_redundant(const PatternSet& patterns, const RedundancyConfig& cfg, std::size_t db_size) {
  if (!(cfg.delta >= 0.0) || !std::isfinite(cfg.delta)) throw ConfigError("delta must be a finite non-negative number");
  RedundancyResult out;
  if (!cfg.enabled) {
    out.kept = patterns;
    sort_patterns(out.kept);
    return out;
  }

  // A witness has frequency in [freq(P) * exp(-delta), freq(P)], so scan only that band.
  std::vector<std::size_t> order(patterns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return patterns[a].frequency < patterns[b].frequency;
  });
  const double shrink = std::exp(-cfg.delta);

  for (const auto& p : patterns) {
    const auto low = static_cast<double>(p.frequency) * shrink;
    auto it = std::lower_bound(order.begin(), order.end(), low, [&](std::size_t i, double v) {
      return static_cast<double>(patterns[i].frequency) + 1e-9 < v;
    });
    const MinedPattern* witness = nullptr;
    for (; it != order.end() && patterns[*it].frequency <= p.frequency; ++it) {
      if (is_redundancy_witness(patterns[*it], p, cfg.delta, db_size)) {
        witness = &patterns[*it];
        break;
      }
    }
    if (witness) {
      out.removals.push_back({p, *witness});
    } else {
      out.kept.push_back(p);
    }
  }
  sort_patterns(out.kept);
  std::sort(out.removals.begin(), out.removals.end(), [](const Removal& a, const Removal& b) {
    return compare_rendered(a.removed.pattern, b.removed.pattern) < 0;
  });
  return out;
}

Histogram build_histogram(PatternSet patterns, std::size_t bucket_count, const HistogramMeta& meta) {
  if (patterns.empty()) throw ConfigError("cannot build a histogram from an empty pattern set");
  if (bucket_count == 0) throw ConfigError("bucket count must be positive");
  if (!(meta.t_percent > 0.0 && meta.t_percent <= 100.0)) throw ConfigError("t_percent must lie in (0, 100]");
  sort_patterns(patterns);

  Histogram h;
  h.db_size = meta.db_size;
  h.minsup_count = meta.minsup_count;
  h.bucket_count_requested = bucket_count;
  h.t_percent = meta.t_percent;

  std::uint64_t total = 0;
  for (const auto& p : patterns) total += p.frequency;
  if (total > std::numeric_limits<std::uint64_t>::max() / (bucket_count + 1)) {
    throw ConfigError("pattern frequencies too large for the requested bucket count");
  }
  const bool every = bucket_count > patterns.size();

  // S >= n * C with C = total / bucket_count, kept in integers: S * bucket_count >= n * total.
  std::uint64_t n = 1;
  std::size_t running = 0;
  for (const auto& p : patterns) {
    running += p.frequency;
    const std::uint64_t scaled = static_cast<std::uint64_t>(running) * bucket_count;
    if (every || scaled >= n * total) {
      h.buckets.push_back({running, p.pattern, p.frequency});
      n = total == 0 ? n + 1 : scaled / total + 1;
    }
  }
  return h;
}

namespace {
constexpr std::string_view kMagic = "PSPH-HISTOGRAM v1";
}

void save_histogram(std::ostream& out, const Histogram& h) {
  out << kMagic << '\n'
      << "db_size=" << h.db_size << '\n'
      << "minsup_count=" << h.minsup_count << '\n'
      << "t_percent=" << detail::format_number(h.t_percent) << '\n'
      << "buckets=" << h.bucket_count_requested << '\n';
  for (const auto& b : h.buckets) {
    out << b.endpoint_number << '\t' << b.endpoint.render() << '\t' << b.frequency << '\n';
  }
}

Histogram read_histogram(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw FormatError("empty catalog", 1);
  if (line != kMagic) throw FormatError("unsupported version '" + line + "'", 1);

  Histogram h;
  h.db_size = detail::parse_count(reader.header("db_size"), reader.line());
  h.minsup_count = detail::parse_count(reader.header("minsup_count"), reader.line());
  h.t_percent = detail::parse_number(reader.header("t_percent"), reader.line());
  if (!(h.t_percent > 0.0 && h.t_percent <= 100.0)) throw FormatError("t_percent must lie in (0, 100]", reader.line());
  h.bucket_count_requested = detail::parse_count(reader.header("buckets"), reader.line());
  if (h.db_size == 0) throw FormatError("db_size must be positive", 2);
  if (h.minsup_count == 0) throw FormatError("minsup_count must be positive", 3);

  while (reader.next(line)) {
    const auto first = line.find('\t');
    const auto second = first == std::string::npos ? first : line.find('\t', first + 1);
    if (second == std::string::npos) {
      throw FormatError("expected <endpoint number><TAB><pattern><TAB><frequency>", reader.line());
    }
    const std::string_view view(line);
    Bucket b{detail::parse_count(view.substr(0, first), reader.line()), [&] {
               try {
                 return PositionalPattern::parse(view.substr(first + 1, second - first - 1));
               } catch (const Error& e) {
                 throw FormatError(e.what(), reader.line());
               }
             }(),
             detail::parse_count(view.substr(second + 1), reader.line())};
    if (!h.buckets.empty()) {
      if (b.endpoint_number <= h.buckets.back().endpoint_number) {
        throw FormatError("endpoint numbers must strictly increase", reader.line());
      }
      if (compare_rendered(h.buckets.back().endpoint, b.endpoint) >= 0) {
        throw FormatError("endpoints must be sorted by pattern", reader.line());
      }
    }
    if (b.frequency > h.db_size || b.frequency < h.minsup_count) {
      throw FormatError("endpoint frequency outside [minsup_count, db_size]", reader.line());
    }
    h.buckets.push_back(std::move(b));
  }
  if (h.buckets.empty()) throw FormatError("catalog has no buckets", reader.line());
  if (h.buckets.size() > h.bucket_count_requested) {
    throw FormatError("catalog holds more buckets than its header declares", reader.line());
  }
  return h;
}

Histogram load_histogram(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open catalog '" + path.string() + "'");
  return read_histogram(in);
}

}  // namespace psph
