#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hre::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitSolverError = 2;

/// Runs one command line (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hre::cli
