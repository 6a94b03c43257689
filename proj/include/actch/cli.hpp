#pragma once

#include <string>
#include <vector>

namespace actch {

/// Full command-line entry point (subcommands: cdc, gaussian, bc-region,
/// binary-example, probing, verify). Returns the process exit code:
/// 0 success, 2 config error, 3 infeasible constraints, 4 numerical failure.
int run_cli(int argc, const char* const* argv);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace actch
