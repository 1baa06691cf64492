#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace goursat {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitNotConverged = 2,
    kExitInvalid = 3,
};

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Summaries go to `out` as key=value lines, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace goursat
