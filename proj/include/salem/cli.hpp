#pragma once

#include <ostream>

namespace salem::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, domain = 3, capacity = 4 };

/// Parses argv, dispatches one subcommand, and maps errors to exit codes.
/// Errors are written to `err` as a single "error: <kind>: <reason>" line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace salem::cli
