#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stiet {

/// Runs one CLI invocation; args excludes the program name. Returns the exit
/// code: 0 success, 2 precondition violation, 3 precision exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stiet
