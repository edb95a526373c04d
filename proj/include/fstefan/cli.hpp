#pragma once

#include <string>
#include <vector>

namespace fstefan
{

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitSelftest = 4,
};

/// Runs one subcommand; args excludes the program name.
/// Subcommands: closed-form, simulate, residual, energy-check, exponent, compare, selftest.
int run_command(const std::vector<std::string>& args);

}  // namespace fstefan
