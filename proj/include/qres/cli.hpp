#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qres::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `qres` tool. Subcommands: probe, bounds, sweep,
/// simulate, oscillator, scenario. Returns the process exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Same, with args[0] taken as the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qres::cli
