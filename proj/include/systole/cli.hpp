#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace systole::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

/// Runs one command; `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace systole::cli
