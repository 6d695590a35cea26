#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace risq {

// Entry point behind the `risq` executable. args excludes the program name.
// Returns 0 on success, 2 on configuration errors, 1 on numeric failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace risq
