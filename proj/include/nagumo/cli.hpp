#ifndef NAGUMO_CLI_HPP
#define NAGUMO_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace nagumo {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitInvariant = 0,
  kExitNotInvariant = 1,
  kExitUnknown = 2,
  kExitInputError = 64,
  kExitNotBoundary = 65,
  kExitNumericalFailure = 70,
};

// Runs `nagumo <args...>` (args excludes the program name). The JSON report
// goes to `out` (or to --output), the one-line summary to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nagumo

#endif  // NAGUMO_CLI_HPP
