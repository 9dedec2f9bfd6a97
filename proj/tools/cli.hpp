#pragma once

#include <string>
#include <vector>

namespace specband::cli {

/// Runs one subcommand. Exit codes: 0 success, 1 invalid input or I/O
/// failure, 2 numerical failure. Diagnostics go to stderr.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace specband::cli
