#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chromoid {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
};

/// Runs the tool; `args` excludes the program name. Never throws.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace chromoid
