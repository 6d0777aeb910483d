#pragma once

#include <string>
#include <vector>

namespace omatch {

// Dispatches the solve/play/verify-bounds/reduce/stress subcommands.
// Exit codes: 0 success and all checks pass, 1 check failure, 2 usage or
// input error.
int run_cli(const std::vector<std::string>& args);

}  // namespace omatch
