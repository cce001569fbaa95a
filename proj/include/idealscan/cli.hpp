#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace idealscan {

/// Entry point behind main(). Exit codes: 0 success, 2 parse error,
/// 3 validation error, 4 enumeration cap exceeded, 5 I/O error, 1 other
/// errors (CLI usage errors keep CLI11's own codes).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace idealscan
