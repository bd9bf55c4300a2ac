#pragma once

#include <ostream>

namespace signbridge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitUsage = 64;

/// Parses argv and runs one subcommand. Machine-readable output goes to out,
/// diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace signbridge::cli
