#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace alphagate::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kValidationError = 2,
    kRuntimeError = 3,
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` (or --out), diagnostics to `err`; nothing reaches `out` unless the
/// whole command succeeded.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace alphagate::cli
