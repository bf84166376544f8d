#pragma once

#include <string>
#include <vector>

namespace drbench {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one `drbench` invocation. args[0] is the program name. Diagnostics
/// go to standard error; machine output only to files.
int dispatch(const std::vector<std::string>& args);

}  // namespace drbench
