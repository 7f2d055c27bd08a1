// Command-line front end. Every command produces a Report:
//
//   {"command": ..., "config": {...}, "results": {...}, "status": ..., "wall_time": ...}
//
// Exit codes: 0 for pass, n/a and inconclusive; 1 for fail; 2 for usage and
// input errors.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace apxbsp {

struct RunConfig {
  std::string command;
  std::string spectrum_path;
  std::string gen;     // kind:size:decay:seedN
  std::string lambda;  // kind:size[:seed]
  int n = 1;
  double p = 2.0;
  bool p_given = false;
  double alpha = 1.0;
  std::string phi;  // alpha:<a> | scheme:... | table:<path>; empty means alpha:<alpha>
  int m = 0;
  double tau = 0.0;  // 0: per-command default
  int grid = 4096;
  int ugrid = 512;
  double tol = 1e-10;
  int kmax = 0;
  std::string mode = "all";
  std::string form = "all";
  int trials = 0;
  bool all_orders = false;
  std::uint64_t seed = 1;
  std::string kinds = "arithmetic,perturbed,lacunary";
  std::string format = "json";
  std::string out;
  std::string majorant;
  double r = 0.0;
  double s = 0.0;
  double delta = 0.0;
  double x = 0.0;
  double C = 0.0;
  int nmin = 1;
  int nmax = 0;

  /// Flags that were given on the command line, for the report's config echo.
  nlohmann::json echo = nlohmann::json::object();
};

struct Report {
  std::string command;
  nlohmann::json config;
  nlohmann::json results;
  std::string status = "n/a";
  double wall_time = 0.0;
  /// Rows for CSV output (one per profile point); empty means key,value rows.
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> csv_header;

  nlohmann::json to_json() const;
  std::string to_csv() const;
  int exit_code() const;
};

/// Thrown for invalid parameter combinations (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one command. Throws UsageError, LoadError, InvalidSpectrum or
/// std::invalid_argument for bad input.
Report dispatch(const RunConfig& cfg);

/// Parses argv, dispatches, writes the report and returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apxbsp
