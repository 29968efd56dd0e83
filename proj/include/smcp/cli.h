#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smcp {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // bad arguments, I/O or validation error
inline constexpr int kExitInfeasible = 2;  // infeasibility signal or failed check

// Relative gap in percent used by the bench summary: (z - z_best) / z * 100.
double relative_gap(double z, double z_best);

// Entry point of the smcp tool; args[0] is the program name. Subcommands:
// solve, generate, bound, bench and check.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smcp
