#pragma once

#include <string>
#include <vector>

namespace quermass {

/// Command-line entry point (subcommands body / quermass / verify <suite> /
/// selfcheck; flags --n --resolution --tol --seed --body --out). Exit codes:
/// 0 pass, 1 usage or precondition failure, 2 certification failure,
/// 3 inequality-verdict failure.
int run_cli(int argc, const char* const* argv);

/// In-process variant for tests: args without the program name; everything
/// the command prints is appended to *captured when non-null.
int run_cli(const std::vector<std::string>& args, std::string* captured = nullptr);

}  // namespace quermass
