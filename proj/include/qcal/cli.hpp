#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcal {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitValidationFailure = 1,
  kExitUsage = 2,
  kExitComputation = 3,
};

/// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace qcal
