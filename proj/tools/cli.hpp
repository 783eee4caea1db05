#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kPreconditionUnmet = 2,
  kStuck = 3,
  kIoError = 4,
};

/// Runs one command line (without the program name). Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcc::cli
