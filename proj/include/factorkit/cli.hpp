#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace factorkit {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // bad flags, unreadable or malformed files
inline constexpr int kExitNumerical = 2;  // ZeroPivot, NotSymmetric, NonSquare, residual failure

// Runs the tool on `args` (without the program name). Results go to `out`,
// diagnostics to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace factorkit
