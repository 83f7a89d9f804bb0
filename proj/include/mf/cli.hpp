#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mf {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // ERROR diagnostics, refusal, unknown feature
inline constexpr int kExitUsage = 2;    // parse, IO or usage failure

// Runs the mftool command line. args[0] is the program name. Input path
// "-" reads `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace mf
