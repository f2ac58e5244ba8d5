#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opmine::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args exclude the program name). Reports go to
// `out` unless redirected to files; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opmine::cli
