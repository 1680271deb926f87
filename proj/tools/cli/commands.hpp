#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aspcli {

enum ExitCode { exit_ok = 0, exit_validation = 1, exit_config = 2, exit_numeric = 3 };

// Runs the command line (without the program name). Data goes to out, or to
// the configured output file; summaries and diagnostics go to err, except the
// sample summary, which goes to out when the paths are written to a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// v with 17 significant digits ("inf", "-inf", "nan" for non-finite values).
std::string format_real(double v);

}  // namespace aspcli
