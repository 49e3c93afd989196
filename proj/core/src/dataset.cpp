#include "psph/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "psph/error.hpp"

namespace psph {

SequenceDatabase read_dataset(std::istream& in) {
  SequenceDatabase db;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      db.rows.push_back(decode_utf8(line));
    } catch (const FormatError& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return db;
}

SequenceDatabase load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset '" + path.string() + "'");
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const SequenceDatabase& db) {
  for (const auto& row : db.rows) out << encode_utf8(row) << '\n';
}

}  // namespace psph
