#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcmap::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kInsufficientData = 3,
};

/// Runs the dcmap command line on args (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcmap::cli
