#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmtlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Runs one command line (args excludes the program name). Data goes to --out when
/// given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmtlab::cli
