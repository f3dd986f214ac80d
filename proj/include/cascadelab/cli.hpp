#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cascadelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Caps OpenMP workers at $CASCADELAB_THREADS when it holds a positive integer.
void apply_thread_cap();

/// "start:stop:step" (endpoints inclusive within 1e-9), "a,b,c", or "x".
std::vector<double> parse_tau_grid(const std::string& text);

}  // namespace cascadelab::cli
