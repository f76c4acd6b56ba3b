#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcmonad {

// Exit codes of run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitLawFailure = 1;
inline constexpr int kExitInputError = 2;

// Subcommands: free-cat, free-monad, laws, check-universal, compose.
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcmonad
