// cli.hpp
// Command-line front end; run_cli is the testable entry point.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mirror {

// Exit codes: 0 ok, 1 internal error, 2 invalid input, 3 unsupported scope
// (CONE_NOT_SMOOTH / RANK_ZERO_Q), 4 selfcheck mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mirror
