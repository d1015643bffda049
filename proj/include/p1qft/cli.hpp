#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p1qft {

/// Runs one command line (without the program name).  Returns the process
/// exit status: 0 when every checked identity holds, 1 when one fails,
/// 2 on a usage, parse or domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace p1qft
