#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypfl {

/// hypfl subcommand dispatch. args excludes the program name.
/// Exit codes: 0 success, 1 numerical failure, 2 validation error (JSON error on err).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypfl
