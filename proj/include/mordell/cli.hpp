#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mordell::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,  // also degenerate input
  kResource = 3,
};

/// Runs the command line `args` (without the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mordell::cli
