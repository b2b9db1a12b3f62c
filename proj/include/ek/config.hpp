#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ek/dynamics.hpp"
#include "ek/scattering.hpp"

namespace ek {

/// Batch experiment configuration. Parses a sectioned key = value text file
/// ([grid], [model], [profile], [plan], [solver], [output]); unknown keys and
/// malformed lines fail with a line-anchored message. Every field has a
/// default; the effective configuration is echoed into every report.
struct ExperimentConfig {
  // [grid]
  int dim = 3;
  int n = 48;
  double box_length = 16.0 * 3.14159265358979323846;

  // [model]
  std::string kappa_family = "quantum";  // quantum | constant | power | synthetic
  double kappa0 = 1.0;
  double kappa_exponent = 1.0;           // power family
  std::string pressure = "cubic";        // cubic | poly
  double pressure_p0 = 1.0;
  std::vector<double> pressure_coeffs;   // poly: from (rho-1)^2 upward
  double j_lo = 0.2, j_hi = 5.0;
  double synthetic_ca = 1.0, synthetic_cg = 1.0;

  // [profile]
  ProfileSpec profile;

  // [plan]
  ExperimentPlan plan;

  // [solver]
  SolverConfig solver;

  // [output]
  std::string out_dir = "out";
  int field_snapshot_cadence = 0;  // every k-th sample; 0 = none
  bool write_csv = true;
  bool write_json = true;

  // [simulate]
  double duration = 1.0;

  std::uint64_t rng_seed = 12345;

  Grid make_grid() const;
  CapillarityModel make_model() const;

  /// Effective (post-default) configuration in the same text format.
  std::string echo() const;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text);
};

}  // namespace ek
