#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scmix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;  // some inputs or cells failed
inline constexpr int kExitUsage = 2;    // bad flags, config or credentials

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scmix::cli
