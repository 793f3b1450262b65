#pragma once

#include <iosfwd>

namespace uat {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitCertificateFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

/// Runs the `uat` command line. Reports go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uat
