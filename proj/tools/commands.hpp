#pragma once

// Subcommands of the sullivan tool, separated from argument parsing so they
// can be driven in-process.

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sullivan::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  std::string input;    // FILE argument
  std::string builtin;  // pl-verify --builtin
  int maxDegree = 12;   // -N
  int bound = 60;       // -B
  std::uint64_t seed = 0;
  int trials = 20;
  int polyCap = 3;
  int toomerCap = 6;
  bool json = false;
};

/// Runs one subcommand; reports go to `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace sullivan::cli
