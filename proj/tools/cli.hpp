#pragma once

#include <string>
#include <vector>

namespace confball::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Full command-line entry point. `args` excludes the program name. Returns
/// the process exit code; diagnostics go to stderr.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace confball::cli
