#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>

namespace psph::detail {

/// Line reader that tracks 1-based line numbers for diagnostics.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    return true;
  }

  std::size_t line() const noexcept { return line_; }

  /// Reads `key=<value>` and returns the value. Throws FormatError.
  std::string header(std::string_view key);

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Strict decimal parse of a non-negative integer. Throws FormatError at `line`.
std::size_t parse_count(std::string_view text, std::size_t line);
/// Strict parse of a finite decimal number. Throws FormatError at `line`.
double parse_number(std::string_view text, std::size_t line);
/// Shortest representation that reads back to the same double.
std::string format_number(double value);

}  // namespace psph::detail
