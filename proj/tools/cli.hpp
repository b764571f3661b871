#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lratt::cli {

enum ExitCode : int {
  kOk = 0,
  kTypeError = 1,
  kSyntaxError = 2,
  kRuntimeFailure = 3,
  kUsageError = 4,
};

/// Runs the command line tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace lratt::cli
