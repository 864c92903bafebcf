#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fractile::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFailure = 1,
  kUsageError = 2,
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless a command is given --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fractile::cli
