#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unidet {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDisagree = 1,  // semantic disagreement or invariant failure
  kExitUsage = 2,     // bad arguments or unparsable input
};

/// Entry point of the `unidet` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unidet
