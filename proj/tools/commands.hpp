#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sixlasso::cli {

/// Stable exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kDomainError = 1,
  kInputError = 2,
  kOutputError = 3,
};

/// Entry point for `sixlasso <lambda|fit|simulate|sweep> ...`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sixlasso::cli
