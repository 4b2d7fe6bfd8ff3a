#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bfhire {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `gen|run|sweep|verify` command. `args` excludes the program
/// name. Returns the process exit status.
int execute_command(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bfhire
