#pragma once

#include <iosfwd>

namespace fpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSupercriticality = 3;
inline constexpr int kExitIo = 4;

/// Entry point of the `fpp` command. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace fpp::cli
