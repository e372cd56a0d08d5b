#pragma once

#include <ostream>

namespace lindsum::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Environment variable overriding the default sampling seed.
inline constexpr const char* kSeedEnvVar = "LINDSUM_SEED";

/// Parses argv and runs one subcommand. Data goes to `out`, diagnostics to
/// `err`; on a usage error nothing is written to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lindsum::cli
