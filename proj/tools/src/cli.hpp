#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracdiff::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kNumericalError = 3 };

/// Every option of every subcommand, with the documented defaults.
struct RunConfig {
  std::string command;
  double alpha = 0.5;
  double a = 0.0;
  double b = 1.0;
  std::size_t steps = 1024;
  std::optional<std::string> grid_file;
  std::string function = "const:1";
  std::string method = "gl-trap";
  int lambda = 40;
  double rho_step = 0.25;
  double tol = 1e-8;
  std::optional<double> delta;
  std::optional<double> split_window;
  std::optional<std::string> output;
  std::string format = "csv";
  unsigned threads = 1;
  // bench
  std::vector<std::string> bench_methods = {"gl-trap"};
  std::vector<std::size_t> sizes = {10000, 20000, 40000};
  int repeats = 3;
};

/// Parses argv, runs the selected subcommand and writes its table to
/// `output` (or `out`). Diagnostics go to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace fracdiff::cli
