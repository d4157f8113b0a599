#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace symred::cli {

enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kUsageError = 2 };

inline const std::vector<std::string>& modes() {
  static const std::vector<std::string> m{"verify-jacobi",     "verify-bianchi",
                                          "verify-minimal-coupling", "verify-reduction",
                                          "simulate-particle", "simulate-maxwell"};
  return m;
}

struct RunRequest {
  std::string mode;  // e.g. "verify-jacobi"; must match [run] mode
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
};

// Runs one scenario and writes its artifacts (report.json plus CSV, JSON or
// snapshot files) into the output directory. Returns the exit status.
int run(const RunRequest& request, std::ostream& log);

// Same, for an already parsed table.
int run_table(const std::string& mode, Table config, const std::string& out_dir,
              std::optional<std::uint64_t> seed, std::ostream& log);

// Prints a pass/fail table for the given report files or directories holding a
// report.json. Returns 0 if every check passed, 1 if any failed, 2 if an
// artifact is missing or malformed.
int report(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err);

// Command line entry point.
int main_entry(int argc, char** argv);

}  // namespace symred::cli
