#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ria::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // computation failed
inline constexpr int kExitUsage = 2;    // bad arguments, unreadable or mismatched inputs

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ria::cli
