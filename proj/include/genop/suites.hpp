#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "genop/complex.hpp"

namespace genop {

//! Probe-grid sizes of the verification suites (overridable through the
//! config file keys grid.<name>).
struct GridConfig {
  int series_t_phases = 4;
  int kernel_tuples = 50;
  int covariance_elements = 20;
  int covariance_probes = 3;
  int duality_pairs = 5;
  int desitter_points = 50;
  int poisson_probes = 10;
  int fourier_sections = 5;
  int fourier_probes = 3;
  int embedding_probes = 10;
  int embedding_max_ell = 6;
};

struct SuiteConfig {
  int nodes = 256;        // contour nodes, power of two in [64, 8192]
  int max_order = 12;     // bracket truncation order L
  std::uint64_t seed = 12345;
  std::map<std::string, double> tolerances;  // overrides of the defaults
  GridConfig grids;
  std::string output_path;      // empty -> stdout
  std::string format = "table";  // "table" | "json"
};

enum class CheckStatus { pass, fail, non_converged };

struct CheckReport {
  std::string check_name;
  CheckStatus status = CheckStatus::fail;
  double measured_residual = 0.0;
  double tolerance = 0.0;
  std::vector<std::pair<double, double>> resolution_trace;  // (resolution, residual)
  std::string provenance;
};

// Check names (= tolerance-map keys) with their default tolerances.
const std::map<std::string, double>& default_tolerances();

const std::vector<std::string>& suite_names();  // includes "all"

// Validates a config (throws ParameterError on bad values).
void validate_config(const SuiteConfig& cfg);

// Runs every check of the named suite ("all" runs everything). Individual
// check failures never abort the run; they are collected into the reports,
// which come back sorted by check name.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg);

// Runs the checks whose names start with the given prefix (used by the
// acceptance driver to time single criteria).
std::vector<CheckReport> run_checks_matching(const std::string& prefix,
                                             const SuiteConfig& cfg);

// Serializes reports to the versioned JSON schema or the human-readable
// table; deterministic byte-for-byte for a fixed config.
std::string emit_report(const std::vector<CheckReport>& reports, const SuiteConfig& cfg,
                        const std::string& format);

inline bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (r.status != CheckStatus::pass) return false;
  return true;
}

}  // namespace genop
