#pragma once

// The polarity-lab command line. Exit codes: 0 success, 1 a verification
// failed, 2 bad usage.

#include <iosfwd>
#include <string>
#include <vector>

namespace plab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. JSON reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace plab::cli
