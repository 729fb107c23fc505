#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arat {

struct CommandOutcome {
  int exit_code = 0;  // 0 success, 1 reported failure, 2 usage error
};

/// Command-line front end (subcommands validate, solve, best-response,
/// verify, simulate, generate, perturb).  `args` excludes the program
/// name.  Human-readable summaries go to `out`, diagnostics to `err`.
CommandOutcome run_cli(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

}  // namespace arat
