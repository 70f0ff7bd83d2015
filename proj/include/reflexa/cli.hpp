#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reflexa/workspace.hpp"

namespace reflexa {

// Exit statuses of the command line front end.
enum ExitCode : int { exit_holds = 0, exit_fails = 1, exit_undetermined = 2, exit_input = 3 };

struct CommandResult {
  std::string report;  // canonical JSON, sorted keys, newline terminated
  int exit_code = exit_holds;
};

// One command with its arguments (no program name), against a parsed workspace.
CommandResult run_command(const std::vector<std::string>& args, const Workspace& ws, const Budget& b);

// The whole program: global options, workspace loading, dispatch.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reflexa
