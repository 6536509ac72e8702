#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace horotree {

// Exit codes: 0 success, 1 precondition violation (JSON error on err),
// 2 verification violations or selftest failure, 64 usage errors.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace horotree
