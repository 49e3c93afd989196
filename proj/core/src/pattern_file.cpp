#include "psph/pattern_file.hpp"

#include <fstream>
#include <ostream>

#include "format_util.hpp"
#include "psph/error.hpp"

namespace psph {

namespace {
constexpr std::string_view kMagic = "PSPH-PATTERNS v1";
}

void write_patterns(std::ostream& out, const PatternFile& file) {
  out << kMagic << '\n'
      << "minsup_count=" << file.minsup_count << '\n'
      << "db_size=" << file.db_size << '\n'
      << "mode=" << to_string(file.mode) << '\n';
  for (const auto& p : file.patterns) out << p.pattern.render() << '\t' << p.frequency << '\n';
}

PatternFile read_patterns(std::istream& in) {
  detail::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw FormatError("empty pattern file", 1);
  if (line != kMagic) throw FormatError("unsupported version '" + line + "'", 1);

  PatternFile file;
  file.minsup_count = detail::parse_count(reader.header("minsup_count"), reader.line());
  file.db_size = detail::parse_count(reader.header("db_size"), reader.line());
  const std::string mode = reader.header("mode");
  if (mode == "POSITIONAL") {
    file.mode = PatternMode::kPositional;
  } else if (mode == "REGULAR") {
    file.mode = PatternMode::kRegular;
  } else {
    throw FormatError("unknown mode '" + mode + "'", reader.line());
  }

  while (reader.next(line)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError("expected <pattern><TAB><frequency>", reader.line());
    MinedPattern mp{[&] {
      try {
        return PositionalPattern::parse(std::string_view(line).substr(0, tab));
      } catch (const Error& e) {
        throw FormatError(e.what(), reader.line());
      }
    }(), detail::parse_count(std::string_view(line).substr(tab + 1), reader.line())};
    if (mp.frequency < file.minsup_count || mp.frequency > file.db_size) {
      throw FormatError("frequency outside [minsup_count, db_size]", reader.line());
    }
    file.patterns.push_back(std::move(mp));
  }
  return file;
}

PatternFile load_patterns(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open pattern file '" + path.string() + "'");
  return read_patterns(in);
}

}  // namespace psph
