#include "format_util.hpp"

#include <charconv>
#include <cmath>

#include "psph/error.hpp"

namespace psph::detail {

std::string LineReader::header(std::string_view key) {
  std::string line;
  if (!next(line)) throw FormatError("missing '" + std::string(key) + "=' header", line_ + 1);
  const std::string prefix = std::string(key) + "=";
  if (line.rfind(prefix, 0) != 0) throw FormatError("expected '" + prefix + "', got '" + line + "'", line_);
  return line.substr(prefix.size());
}

std::size_t parse_count(std::string_view text, std::size_t line) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw FormatError("expected a non-negative integer, got '" + std::string(text) + "'", line);
  }
  return value;
}

double parse_number(std::string_view text, std::size_t line) {
  double value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw FormatError("expected a number, got '" + std::string(text) + "'", line);
  }
  return value;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace psph::detail
