#pragma once

#include <iosfwd>

namespace pang::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses `argv` and runs one subcommand. Normal output goes to `out`,
/// diagnostics and timings to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pang::cli
