#pragma once

#include <ostream>

namespace secjam::cli {

/// Parses argv and runs the selected subcommand. Data goes to `out` (or the
/// --output file), diagnostics to `err`. Returns the process exit status.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace secjam::cli
