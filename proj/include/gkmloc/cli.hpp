#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gkmloc::cli {

/// Runs one command.  `args` excludes the program name.
/// Exit codes: 0 success, 1 validation or mathematical inconsistency,
/// 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gkmloc::cli
