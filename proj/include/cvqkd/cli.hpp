#pragma once

#include <ostream>

namespace cvqkd {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitAbort = 3 };

/// Name of the environment variable that overrides the configured seed.
inline constexpr const char* kSeedEnvVar = "CVQKD_SEED";

/// Entry point behind the `cvqkd` binary. Subcommands: params, simulate,
/// sweep. CSV and tables go to `out` (or a file), the simulate summary and
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvqkd
