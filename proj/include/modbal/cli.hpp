#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modbal {

/// Exit codes: 0 success, 1 invalid input, 2 I/O failure or usage error.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modbal
