#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "epic/workspace.hpp"

namespace epic::cli {

/// Exit codes of `run`.
enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Runs one command. `args` excludes the program name; input files named on
/// the command line (positional arguments or --file) are loaded on top of `w`.
/// Reports go to `out`, diagnostics to `err`.
int run(const Workspace& w, const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epic::cli
