#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rimg {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitDimension = 4,
  kExitSolver = 5,
};

/// Runs one command line (without the program name). Messages go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rimg
