#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcpbound {

enum ExitStatus : int {
  kExitOk = 0,
  kExitHypothesisFailure = 1,
  kExitInputError = 2,
};

/// Runs one subcommand (`alpha`, `check-p`, `solve`, `verify`, `sol-bounds`,
/// `bounds`, `rel-bounds`, `compare`). `args` excludes the program name.
int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace tcpbound
