#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace drsplit::cli {

enum ExitCode : int { kSuccess = 0, kError = 1, kNotConverged = 2 };

struct RunConfig {
  std::string command;
  std::string problem_path;
  std::optional<double> tau;
  std::optional<double> gamma;
  std::optional<int> iters;
  std::optional<double> stop_tol;
  std::uint64_t seed = 0;
  int n_max = 6;
  std::optional<int> trials;
  std::string out_path;
  std::string format = "csv";
};

/// Dispatches a parsed configuration. Reports go to `out` (or cfg.out_path),
/// diagnostics to `err`.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and executes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace drsplit::cli
