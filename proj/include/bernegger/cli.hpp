#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bernegger {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitFitFailure = 2;

/// Runs the `fit`, `compare`, `curve`, `simulate` or `stats` command.
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bernegger
