#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nnv::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kNoQualifiedCandidate = 2,
};

// Runs one command line (args[0] is the program name). Results go to `out`,
// diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nnv::cli
