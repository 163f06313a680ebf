#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcover {

/// Runs the command line (without the program name). Exit codes: 0 success,
/// 1 domain error or failed verification, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcover
