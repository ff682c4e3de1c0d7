#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wlg {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on input errors and 2 on internal-invariant errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wlg
