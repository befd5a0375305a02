#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgain::cli {

/// Runs one command. `args` excludes the program name. Returns the process
/// exit code: 0 ok, 1 verification failure or I/O, 2 parse, 3 domain or
/// precondition, 4 non-convergence, 5 resource cap.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Parses "0.25" or "0.5/lambda1".
double parse_delta(const std::string& text, double lambda1);

}  // namespace pgain::cli
