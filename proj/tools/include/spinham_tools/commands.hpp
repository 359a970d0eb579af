#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace spinham::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kContractViolation = 3,
  kModelViolation = 4,
};

/// --c flag, then the input file's "c", then SPINHAM_C, then the default.
double resolve_c(std::optional<double> flag, std::optional<double> file_c);

/// Parses the command line and runs one subcommand. Never throws.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace spinham::cli
