#pragma once

// Command-line front end: file-driven wrappers around the reduction, bound,
// counting, family, and Smith machinery, plus the randomized sweep harness
// that compares measured zero counts against every applicable bound.
//
// Each run_* function returns the full JSON report; run_cli parses flags,
// dispatches, writes the report to --output (or stdout), and maps outcomes
// onto exit codes: 0 success, 2 input error, 3 numerical failure, 4 sweep
// property violation. Reports embed the tool version and the complete
// configuration, and a fixed config + seed always produces identical bytes.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscbound/bounds.hpp"
#include "oscbound/json_io.hpp"
#include "oscbound/models.hpp"

namespace oscbound {

inline constexpr const char *kToolVersion = "0.1.0";

// thrown by commands for problems in the input document
struct InputError : std::invalid_argument {
  explicit InputError(const std::string &what) : std::invalid_argument(what) {}
};

// thrown when a computation (not the input) breaks down
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;  // report path; empty writes to stdout
  std::string csv;     // optional per-row CSV (sweep only)
  uint64_t seed = 1;
  double rel_tol = 1e-9;  // contour integration tolerance
  double tau = 1e-10;     // float-mode rank / truncation threshold
  double delta = 1e-6;    // contour safety offset
  int trunc = 0;          // re-truncate series inputs when > 0 (smith)
  BoundConstants constants;
  MatrixNorm norm = MatrixNorm::rowsum;
  double clearance_factor = 6.0;
  double interval_len = 1.0;  // real interval for the disconjugacy test
  // sweep ranges
  int draws = 50;
  int sweep_n = 2;
  int sweep_m = 2;
  long entry_bound = 1;  // integer entries drawn from [-M, M]
  int omega_max = 0;     // > 0 switches sweep to the oscillator frequency scan
};

Json config_to_json(const RunConfig &cfg);

Json run_derive(const RunConfig &cfg);
Json run_bound(const RunConfig &cfg);
Json run_count(const RunConfig &cfg);
Json run_sweep(const RunConfig &cfg);
Json run_family(const RunConfig &cfg);
Json run_smith(const RunConfig &cfg);
Json run_certify(const RunConfig &cfg);

// exit code the report maps to: 4 for sweep violations, 3 for failed disks
// or a failed certification, 0 otherwise
int report_exit_code(const std::string &command, const Json &report);

// full front end; args exclude the program name
int run_cli(const std::vector<std::string> &args);

}  // namespace oscbound
