#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimtrunc {

// Batch front end. Subcommands: constants, bounds, sweep, verify.
// Exit codes: 0 success, 1 verification failure, 2 parse error,
// 3 refused precondition, 4 numeric failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dimtrunc
