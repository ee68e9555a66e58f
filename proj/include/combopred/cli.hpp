#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace combopred {

// Runs the command-line interface on the given arguments (without the
// program name). Exit codes: 0 success, 1 failed reproduce checks, 2 usage,
// 3 parse, 4 invariant, 5 infeasible model.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace combopred
