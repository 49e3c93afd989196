#pragma once

#include <cstdint>

#include "psph/pattern.hpp"

namespace psph {

struct SynthSpec {
  std::size_t rows = 1000;
  /// Letters used: the first `alphabet_size` of A-Z then a-z.
  std::size_t alphabet_size = 6;
  std::size_t min_length = 18;
  std::size_t max_length = 60;
  std::uint64_t seed = 7;
  /// Distinct words in the vocabulary rows are assembled from.
  std::size_t vocabulary = 400;
  /// Skew of word choice.
  double zipf_exponent = 1.0;
  /// Skew of letters inside vocabulary words.
  double letter_exponent = 1.0;
};

/// Rows of space-separated words over the alphabet, shaped like person names: words
/// are appended until the row reaches min_length and the row is cut at max_length.
/// Letters and words are both drawn with Zipf skew, so a few words recur often enough
/// to form frequent patterns. Throws ConfigError on bad parameters.
SequenceDatabase synth(const SynthSpec& spec);

}  // namespace psph
