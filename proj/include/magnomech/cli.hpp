#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magnomech::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kInputFailure = 2 };

/// Runs the command line `magnomech <args...>` (args exclude the program
/// name) and returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magnomech::cli
