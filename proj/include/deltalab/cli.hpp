#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace deltalab {

/// Entry point behind the `deltalab` executable. `args` excludes the program
/// name. Returns 0 on success, 1 on invalid input, 2 when an internal
/// invariant is violated.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deltalab
