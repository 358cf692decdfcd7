#pragma once

// Command-line front end: subcommands field, enumerate, verify, degrees,
// equality, remarks and report.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "towerlab/report.hpp"

namespace towerlab {

enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitInconclusive = 3,
  kExitError = 4,
};

struct RunConfig {
  std::string command;
  unsigned p = 3;
  unsigned m = 1;
  unsigned k = 1;
  unsigned levels = 3;
  std::string model = "free";
  std::string tower = "B";
  std::string step = "H";
  unsigned from = 2;
  std::string identity = "all";
  std::string mode = "both";
  std::string left = "H";
  std::string right = "C";
  std::string expect = "equal";
  bool corrupt = false;
  bool stability = true;
  std::string format = "json";
  std::string out;
  unsigned workers = 1;
  std::uint64_t max_points = kDefaultMaxPoints;

  /// Everything that determines the results (not workers, format or out).
  Json echo() const;
};

/// Runs a parsed configuration and returns the assembled report.
/// Throws InvalidArgument for bad selections and CapExceeded for caps.
Report execute(const RunConfig& cfg);

/// Parses args (without the program name), runs, writes the report, and
/// returns the exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code(Verdict v);

}  // namespace towerlab
