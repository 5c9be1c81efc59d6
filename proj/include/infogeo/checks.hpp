#pragma once

// Verification suite: one registered check per library invariant, executed
// over a list of dimensions with per-check seeds, producing machine-readable
// reports. The registry is the single source of coverage; run_verify refuses
// to run when a required invariant has no registered check.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "infogeo/covering.hpp"
#include "infogeo/serialize.hpp"

namespace infogeo {

struct CheckRecord {
  std::string name;
  int n = 0;
  long long samples = 0;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;
};

struct Report {
  std::string suite;
  std::string artifact_version;
  std::vector<CheckRecord> records;
  bool overall_pass = false;
};

struct CheckContext {
  int n = 3;
  long long samples = 1000;
  std::uint64_t seed = 42;
};

/// What a check measures: its worst absolute error and how many samples it
/// actually evaluated (checks enforce their own documented minimums).
struct CheckOutcome {
  double max_abs_error = 0.0;
  long long samples = 0;
};

struct Check {
  std::string name;
  double tolerance;  // base tolerance, multiplied by the run's tol_scale
  std::function<CheckOutcome(const CheckContext&)> fn;
};

/// All registered checks, in fixed execution order.
const std::vector<Check>& check_registry();

/// Names of the invariant checks that must exist in the registry. The
/// self-test (and run_verify itself) fails when one is missing.
const std::vector<std::string>& required_invariant_checks();

struct VerifyConfig {
  std::vector<int> n_list{2, 3, 5, 8};
  long long samples = 1000;
  std::uint64_t seed = 42;
  double tol_scale = 1.0;
};

/// Runs every registered check for every n in the list.
Report run_verify(const VerifyConfig& config);

/// Pullback residual suite: three records (metric, symplectic, complex
/// structure) at the mode's tolerance.
Report run_pullback_suite(int n, long long samples, std::uint64_t seed,
                          PushforwardMode mode, double tol_scale = 1.0);

Json report_to_json(const Report& report);

/// Serializes the report to a file; throws IoError on failure.
void write_report(const Report& report, const std::string& path);

}  // namespace infogeo
