#include "psph/workload.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "psph/error.hpp"

namespace psph {

std::size_t Random::between(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw ConfigError("empty random range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::size_t>(engine_());
  // Rejection keeps the draw unbiased and portable.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::size_t>(x % span);
}

double Random::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

void check_spec(const WorkloadSpec& s) {
  if (s.min_word_length == 0 || s.min_word_length > s.max_word_length) throw ConfigError("bad word length range");
  if (s.min_underscores > s.max_underscores) throw ConfigError("bad underscore range");
  if (s.min_percent_group2 > s.max_percent_group2 || s.min_percent_group3 > s.max_percent_group3) {
    throw ConfigError("bad percent-sign range");
  }
  if (s.min_kept == 0) throw ConfigError("min_kept must be positive");
}

bool has_wildcard(TextView text) {
  return std::any_of(text.begin(), text.end(), [](char32_t c) { return !is_pattern_literal(c); });
}

bool is_space(char32_t c) { return c == U' ' || c == U'\t' || c == U'\r' || c == U'\n' || c == U'\v' || c == U'\f'; }

std::vector<Text> words_of(TextView row, const WorkloadSpec& spec) {
  std::vector<Text> out;
  std::size_t i = 0;
  while (i < row.size()) {
    while (i < row.size() && is_space(row[i])) ++i;
    std::size_t j = i;
    while (j < row.size() && !is_space(row[j])) ++j;
    const TextView word = row.substr(i, j - i);
    if (word.size() >= spec.min_word_length && word.size() <= spec.max_word_length && !has_wildcard(word)) {
      out.emplace_back(word);
    }
    i = j;
  }
  return out;
}

Text with_underscores(Text word, Random& rng, const WorkloadSpec& spec) {
  const std::size_t n = std::min(rng.between(spec.min_underscores, spec.max_underscores), word.size());
  for (std::size_t k = 0; k < n; ++k) word[rng.between(0, word.size() - 1)] = kAnyOne;
  return word;
}

LikePredicate make_predicate(const Text& text) { return parse_like(encode_utf8(text)); }

Text wrap(const std::vector<Text>& parts) {
  Text out(1, kAnyRun);
  for (const auto& p : parts) {
    out += p;
    out.push_back(kAnyRun);
  }
  return out;
}

std::vector<const Text*> long_rows(const SequenceDatabase& db, const WorkloadSpec& spec) {
  std::vector<const Text*> out;
  for (const auto& row : db.rows) {
    if (row.size() >= spec.min_removed + spec.min_kept && !has_wildcard(row)) out.push_back(&row);
  }
  return out;
}

// Deletes some characters of a random row, inserts `%` at random gaps and wraps the
// result, collapsing doubled `%`.
Text deletion_candidate(const std::vector<const Text*>& rows, std::size_t min_percent, std::size_t max_percent,
                        Random& rng, const WorkloadSpec& spec) {
  const Text& row = *rows[rng.between(0, rows.size() - 1)];
  const std::size_t k = rng.between(spec.min_removed, row.size() - spec.min_kept);
  std::vector<std::size_t> idx(row.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[rng.between(i, idx.size() - 1)]);
  std::vector<bool> removed(row.size(), false);
  for (std::size_t i = 0; i < k; ++i) removed[idx[i]] = true;
  Text kept;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!removed[i]) kept.push_back(row[i]);
  }

  std::vector<bool> gap(kept.size() + 1, false);
  const std::size_t m = rng.between(min_percent, max_percent);
  for (std::size_t i = 0; i < m; ++i) gap[rng.between(0, kept.size())] = true;
  gap.front() = gap.back() = true;
  Text out;
  for (std::size_t i = 0; i <= kept.size(); ++i) {
    if (gap[i]) out.push_back(kAnyRun);
    if (i < kept.size()) out.push_back(kept[i]);
  }
  return out;
}

}  // namespace

std::vector<LikePredicate> gen_group1(const SequenceDatabase& db, const WorkloadSpec& spec) {
  check_spec(spec);
  std::vector<std::vector<Text>> rows;
  for (const auto& row : db.rows) {
    auto words = words_of(row, spec);
    if (!words.empty()) rows.push_back(std::move(words));
  }
  if (rows.empty()) throw GenerationError("no row holds a word of the requested length");

  Random rng(spec.seed);
  std::vector<LikePredicate> out;
  out.reserve(spec.count);
  while (out.size() < spec.count) {
    const auto& words = rows[rng.between(0, rows.size() - 1)];
    const std::size_t first = rng.between(0, words.size() - 1);
    std::vector<Text> parts{with_underscores(words[first], rng, spec)};
    const bool two = rng.between(0, 1) == 1 && first + 1 < words.size();
    if (two) {
      const std::size_t second = rng.between(first + 1, words.size() - 1);
      if (words[first].size() + words[second].size() <= spec.max_group1_length) {
        parts.push_back(with_underscores(words[second], rng, spec));
      }
    }
    out.push_back(make_predicate(wrap(parts)));
  }
  return out;
}

std::vector<LikePredicate> gen_group2(const SequenceDatabase& db, const WorkloadSpec& spec) {
  check_spec(spec);
  const auto rows = long_rows(db, spec);
  if (rows.empty()) throw GenerationError("no row is long enough for deletion queries");
  Random rng(spec.seed);
  std::vector<LikePredicate> out;
  out.reserve(spec.count);
  while (out.size() < spec.count) {
    out.push_back(make_predicate(
        deletion_candidate(rows, spec.min_percent_group2, spec.max_percent_group2, rng, spec)));
  }
  return out;
}

std::vector<LikePredicate> gen_group3(const SequenceDatabase& db, const WorkloadSpec& spec) {
  check_spec(spec);
  const auto rows = long_rows(db, spec);
  if (rows.empty()) throw GenerationError("no row is long enough for deletion queries");
  Random rng(spec.seed);
  std::vector<LikePredicate> out;
  for (std::size_t i = 0; i < spec.count; ++i) {
    auto candidate = make_predicate(
        deletion_candidate(rows, spec.min_percent_group3, spec.max_percent_group3, rng, spec));
    const bool negative = std::none_of(db.rows.begin(), db.rows.end(),
                                       [&](const Text& row) { return like_matches(candidate, row); });
    if (negative) out.push_back(std::move(candidate));
  }
  return out;
}

Workload read_queries(std::istream& in) {
  Workload w;
  int group = 1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = std::string_view(line).substr(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.rfind("group=", 0) == 0) {
        try {
          std::size_t used = 0;
          const std::string value(body.substr(6));
          group = std::stoi(value, &used);
          if (used != value.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
          throw FormatError("malformed group directive", line_no);
        }
      }
      continue;
    }
    try {
      w.queries.push_back({group, parse_like(line)});
    } catch (const InvalidPredicate& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return w;
}

Workload load_queries(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open query file '" + path.string() + "'");
  return read_queries(in);
}

void write_queries(std::ostream& out, int group, const std::vector<LikePredicate>& queries) {
  out << "# group=" << group << '\n';
  for (const auto& q : queries) out << q.raw << '\n';
}

}  // namespace psph
