#pragma once

#include <filesystem>
#include <iosfwd>

#include "psph/pattern.hpp"

namespace psph {

/// Reads a dataset: UTF-8 text, one row per LF-terminated line, empty lines skipped,
/// no escaping. Throws FormatError (with the line number) on malformed UTF-8.
SequenceDatabase read_dataset(std::istream& in);
SequenceDatabase load_dataset(const std::filesystem::path& path);

void write_dataset(std::ostream& out, const SequenceDatabase& db);

}  // namespace psph
