#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace slocc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,     // malformed text or JSON, or an invalid argument
  kNumericError = 3,   // numerical failure or size limit
  kInconclusive = 4,   // inconclusive verdict under --strict
};

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slocc::cli
