#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxcert {

// Parses and runs one command line (without the program name).  Writes the
// report to out and diagnostics to err.  Returns the process exit code:
// 0 success (verdicts such as "rejected" or "not separated" are successes),
// 2 usage error, 3 input-format error, 4 internal consistency fault.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace coxcert
