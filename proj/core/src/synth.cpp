#include "psph/synth.hpp"

#include <algorithm>
#include <cmath>

#include "psph/error.hpp"
#include "psph/workload.hpp"

namespace psph {

namespace {

class ZipfTable {
 public:
  ZipfTable(std::size_t n, double exponent) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
      cumulative_.push_back(sum);
    }
    for (auto& c : cumulative_) c /= sum;
  }

  std::size_t draw(Random& rng) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), rng.unit());
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

char32_t letter(std::size_t i) {
  return i < 26 ? static_cast<char32_t>(U'A' + i) : static_cast<char32_t>(U'a' + (i - 26));
}

}  // namespace

SequenceDatabase synth(const SynthSpec& spec) {
  if (spec.rows == 0 || spec.alphabet_size == 0 || spec.vocabulary == 0) {
    throw ConfigError("synth parameters must be positive");
  }
  if (spec.alphabet_size > 52) throw ConfigError("alphabet_size must be at most 52");
  if (spec.min_length == 0 || spec.min_length > spec.max_length) throw ConfigError("bad row length range");

  Random rng(spec.seed);
  const ZipfTable letters(spec.alphabet_size, spec.letter_exponent);
  const ZipfTable words(spec.vocabulary, spec.zipf_exponent);

  std::vector<Text> vocabulary;
  for (std::size_t i = 0; i < spec.vocabulary; ++i) {
    Text w;
    const std::size_t len = rng.between(3, 10);
    for (std::size_t k = 0; k < len; ++k) w.push_back(letter(letters.draw(rng)));
    vocabulary.push_back(std::move(w));
  }

  SequenceDatabase db;
  db.rows.reserve(spec.rows);
  for (std::size_t r = 0; r < spec.rows; ++r) {
    Text row;
    while (row.size() < spec.min_length) {
      if (!row.empty()) row.push_back(U' ');
      row += vocabulary[words.draw(rng)];
    }
    if (row.size() > spec.max_length) row.resize(spec.max_length);
    if (row.back() == U' ') row.back() = letter(letters.draw(rng));
    db.rows.push_back(std::move(row));
  }
  return db;
}

}  // namespace psph
