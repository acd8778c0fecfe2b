#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqmine::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInputError = 3,
  kMinerMismatch = 4,
};

// Entry point shared by the seqmine executable and the tests. `args` holds
// the subcommand and its flags, without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqmine::cli
