#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semdisc::app {

enum ExitCode : int { exit_ok = 0, exit_empty = 1, exit_usage = 2, exit_io = 3 };

/// Runs `semdisc <args...>`; args[0] is the program name. JSON results go
/// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names of all subcommands, in help order.
std::vector<std::string> subcommand_names();

/// Long flag names ("--concepts", ...) a subcommand accepts.
std::vector<std::string> subcommand_flags(const std::string& name);

} // namespace semdisc::app
