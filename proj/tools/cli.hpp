#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nerd::cli {

/// Exit codes, one per failure class.
enum ExitCode : int {
  ok = 0,
  internal_error = 1,
  usage_error = 2,
  io_error = 3,
  format_error = 4,
  config_error = 5,
  size_error = 6,
  split_error = 7,
  dead_end_error = 8,
};

/// Parses `args` (args[0] is the program name) and runs the selected
/// subcommand. Results go to `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nerd::cli
