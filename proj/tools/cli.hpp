#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace p2pmarket::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitSimulation = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace p2pmarket::cli
