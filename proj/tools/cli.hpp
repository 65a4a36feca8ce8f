#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qk::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kPrecondition = 2,
  kCounterexample = 3,
  kUsage = 4,
};

/// Runs one command line (without the program name). Structured results go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qk::cli
