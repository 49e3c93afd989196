#pragma once

#include <iosfwd>

namespace psph::cli {

/// Runs one `psph` subcommand. Returns 0 on success, 2 on usage errors and 1 on
/// runtime errors; output files are written to a temporary name and renamed only on
/// success.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psph::cli
