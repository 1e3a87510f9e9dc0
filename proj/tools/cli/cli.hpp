#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace casimir_cli {

/// Exit codes of run().
enum ExitCode : int {
  kOk = 0,
  kComputationFailed = 1,  ///< a point failed; rows before it were still written
  kUsage = 2,              ///< bad flags, bad range spec, unreadable table
};

/// "x" or "start:stop:count:lin|log". Throws std::invalid_argument.
std::vector<double> parse_range(std::string_view spec);

/// Fixed "%.8e" rendering used for every floating-point cell.
std::string format_number(double v);

/// Runs one command line (args excludes the program name). Tables go to
/// `out` unless --out is given; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir_cli
