#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fqsl::cli {

enum ExitCode : int { kSuccess = 0, kBadInput = 2, kSolverFailure = 3 };

/// Runs the fqsl command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqsl::cli
