#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nlcl::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kInvariantFailure = 2 };

/// Entry point behind the `nlcl` executable. args[0] is the program name.
/// Subcommands: run, study, check, weights.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlcl::cli
