#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dirac/cli/scenario.hpp"
#include "dirac/cli/table.hpp"

namespace dirac::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericError = 3 };

/// A table plus the status it was produced with; interrupted flows keep the
/// rows computed before the failure.
struct CommandResult {
  Table table;
  int exit_code = kOk;
  std::string error;
};

CommandResult cmd_brackets(const Scenario& s);
CommandResult cmd_evolve(const Scenario& s);
CommandResult cmd_quantum(const Scenario& s);
CommandResult cmd_maxwell(const Scenario& s);

/// Full command-line entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirac::cli
