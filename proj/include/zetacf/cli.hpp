#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetacf {

/// Exit codes shared by every subcommand and output format.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitError = 2,
};

/// Runs the command line `args` (without the program name) and writes the
/// rendered envelope to `out`, diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetacf
