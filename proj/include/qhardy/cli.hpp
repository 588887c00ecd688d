#pragma once

// Command-line surface. Kept as a library function so tests can drive it
// in-process; tools/main.cpp is a thin wrapper.
//
// Exit codes, stable across all subcommands:
//   0  success / derivation accepted
//   1  verification or derivation failure
//   2  input, domain or parse error
//   3  usage error

#include <iosfwd>
#include <string>
#include <vector>

namespace qhardy {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUsage = 3;

// args excludes the program name. Data goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhardy
