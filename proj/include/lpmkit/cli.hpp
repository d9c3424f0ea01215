#pragma once

#include <string>
#include <vector>

namespace lpmkit::cli {

/// Runs the command-line front end. Exit codes: 0 success, 1 internal error,
/// 2 usage error, 3 input parse error, 4 resource-budget exhaustion.
int run(int argc, const char* const* argv);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace lpmkit::cli
