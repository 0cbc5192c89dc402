#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cubelens::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyViolated = 1,
  kUsage = 2,
  kUnresolved = 3,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubelens::cli
