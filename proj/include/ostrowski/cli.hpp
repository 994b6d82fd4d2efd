#pragma once

#include <ostream>

namespace ostrowski::cli {

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRange = 3;

// Runs `ostrowski <subcommand> ...`. Results go to `out` unless --out names a
// file; diagnostics go to `err`. Returns the exit code:
//   0  success / all checks passed
//   1  a check failed
//   2  usage error: bad flags, bad spec grammar, invalid digits or atom table
//   3  overflow, range, index or transform-cap error
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ostrowski::cli
