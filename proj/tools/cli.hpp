// cli.hpp: entry point of the `qent` command-line tool.
//
// Exit codes: 0 success, 1 runtime or numerical failure, 2 usage or
// validation error.

#pragma once

#include <iosfwd>

namespace qent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable consulted for the default --seed.
inline constexpr const char* kSeedEnv = "QENT_SEED";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qent::cli
