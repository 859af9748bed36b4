#pragma once

namespace swclock {

inline constexpr const char* kVersion = "0.1.0";

/// Parses argv and runs one subcommand. Returns the process exit code:
/// 0 success, 2 configuration or usage error, 3 output I/O failure.
int run_cli(int argc, char** argv);

}  // namespace swclock
