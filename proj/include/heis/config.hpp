#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heis/delta_spectra.hpp"

namespace heis {

/// Raised for malformed or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlancherelRung {
  int truncation = 4;
  double lambda_min = 0.1;
  double lambda_max = 6.0;
  int lambda_nodes = 24;  // total, split evenly between the two signs
};

struct RunConfig {
  int truncation = 16;
  double lambda_min = 0.01;
  double lambda_max = 10.0;
  int lambda_nodes = 96;
  double box_halfwidth = 6.0;
  int box_nodes = 64;
  double fd_step = 1e-4;
  int r_nodes = 4096;
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  std::uint64_t seed = 20240611;

  std::vector<PlancherelRung> plancherel_ladder;
  std::string plancherel_function = "gaussian";

  std::vector<std::pair<MultiIndex, cplx>> candidate;
  int candidate_truncation = 1;
  std::vector<double> cutoffs;
  double deficiency_lambda_lo = 1.0;

  MultiIndex alpha{0, 1, 0};
  int spectrum_truncation = 8;

  double ray_theta = 0.0;
  double ray_h0 = 1.0;
  int ray_samples = 30;

  /// Tolerance by name, falling back to the built-in default. Throws ConfigError for unknown names.
  double tolerance(const std::string& name) const;

  /// Throws ConfigError on any broken invariant.
  void validate() const;
};

/// Built-in tolerance table.
const std::map<std::string, double>& default_tolerances();

RunConfig default_config();

/// Parses a JSON document on top of the defaults. Throws ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace heis
