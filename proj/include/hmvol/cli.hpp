// Command-line front end: compute, verify, table, lvalue.
#ifndef HMVOL_CLI_HPP
#define HMVOL_CLI_HPP

#include <iosfwd>

namespace hmvol {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 2,
  kExitMismatch = 3,
  kExitBudget = 4,
};

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Machine-readable output goes to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmvol

#endif  // HMVOL_CLI_HPP
