#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "heis/config.hpp"

namespace heis {

enum ExitCode : int { kExitOk = 0, kExitCriterion = 1, kExitUsage = 2 };

/// Round-trip formatting for CSV cells: 17 significant digits, '.' separator.
std::string csv_number(double v);

int cmd_hardy(const RunConfig& cfg, std::ostream& log);
int cmd_plancherel(const RunConfig& cfg, std::ostream& log);
int cmd_deficiency(const RunConfig& cfg, std::ostream& log);
int cmd_delta_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_geodesic(const RunConfig& cfg, std::ostream& log);
int cmd_check(const RunConfig& cfg, std::ostream& log);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // worst observed residual or defect
  double tolerance = 0.0;
};

/// Every module invariant, evaluated with the config's fd_step and seed.
std::vector<CheckResult> run_invariant_suite(const RunConfig& cfg);

struct PlancherelRow {
  int truncation = 0;
  int lambda_nodes = 0;
  double direct_norm = 0.0;
  double spectral_norm = 0.0;
  double relative_defect = 0.0;
};

/// One row per ladder rung for the configured built-in test function.
std::vector<PlancherelRow> plancherel_ladder(const RunConfig& cfg);

}  // namespace heis
