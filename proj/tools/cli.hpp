#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nlbox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlbox::cli
