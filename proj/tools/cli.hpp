#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace negforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitInternalError = 2;

// Runs the negforge command line. args[0] is the program name. Normal output
// goes to `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace negforge::cli
