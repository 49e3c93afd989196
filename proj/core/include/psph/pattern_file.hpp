#pragma once

#include <filesystem>
#include <iosfwd>

#include "psph/miner.hpp"

namespace psph {

/// Miner output as stored on disk.
struct PatternFile {
  std::size_t minsup_count = 1;
  std::size_t db_size = 0;
  PatternMode mode = PatternMode::kPositional;
  PatternSet patterns;

  friend bool operator==(const PatternFile&, const PatternFile&) = default;
};

/// Format:
///   PSPH-PATTERNS v1
///   minsup_count=<int>
///   db_size=<int>
///   mode=POSITIONAL|REGULAR
///   <pattern><TAB><frequency>      (one per pattern)
void write_patterns(std::ostream& out, const PatternFile& file);
/// Throws FormatError with the offending line number.
PatternFile read_patterns(std::istream& in);

PatternFile load_patterns(const std::filesystem::path& path);

}  // namespace psph
