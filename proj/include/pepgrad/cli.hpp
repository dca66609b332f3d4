#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pepgrad::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRegime = 3;
inline constexpr int kExitSolver = 4;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pepgrad::cli
