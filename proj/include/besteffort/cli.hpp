#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace besteffort::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kPrecondition = 3,
  kBudget = 4,
};

/// Runs the command line (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace besteffort::cli
