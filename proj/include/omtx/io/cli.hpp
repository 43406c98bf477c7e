#pragma once

#include <ostream>

namespace omtx::io {

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numerical = 2, exit_validation = 3 };

/// Entry point of the `omtx` tool. Subcommands: steady, spectrum, transistor,
/// stability, validate.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace omtx::io
