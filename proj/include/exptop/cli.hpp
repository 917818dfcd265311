#pragma once

// Command-line front end. Subcommands: coord, knot, homology, pi1.

#include <iosfwd>
#include <string>
#include <vector>

namespace exptop::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Normal output goes
/// to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rounds to 12 significant digits; integral results are exact integers.
std::string format_number(double x);

}  // namespace exptop::cli
