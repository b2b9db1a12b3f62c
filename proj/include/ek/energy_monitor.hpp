#pragma once

#include <optional>
#include <vector>

#include "ek/dynamics.hpp"

namespace ek {

/// Optional reference pair subtracted before weighting (the error-energy
/// role: v_ref = grad of a reference ell, u_ref a reference velocity).
struct EnergyReference {
  std::vector<SpectralField> v;
  std::vector<SpectralField> u;
};

/// Gauge-weighted energy
///   E_gamma = || phi(rho) Lap^gamma v ||_L2^2 + || phi(rho) Lap^gamma u ||_L2^2
/// with v = grad L(rho), Lap^gamma the |xi|^{2 gamma} multiplier and
/// phi = sqrt(rho) a(rho)^gamma applied pointwise in physical space.
double weighted_energy(const CapillarityModel& model, const FluidState& state, double gamma,
                       const EnergyReference* subtract = nullptr);

struct EnergyReport {
  double gamma = 0.0;
  std::vector<double> t;
  std::vector<double> E_gamma;
  std::vector<double> blowup_integral;  // running trapezoid of ||Lap rho||_inf + ||div u||_inf
  std::vector<double> rho_min, rho_max;
  bool range_ok = true;         // density range stayed inside J
  bool integral_ok = true;      // accumulated integral below the ceiling
  bool continuation_ok = true;  // both
};

/// Online diagnostics over a sampled trajectory (uniform or not); the
/// blow-up integral is accumulated with the trapezoid rule.
EnergyReport blowup_monitor(const CapillarityModel& model, const PrimitiveTrajectory& traj,
                            double gamma = 0.0, double integral_ceiling = 1e6);

/// Same accumulators driven by a z-form trajectory (states via L^{-1}).
EnergyReport blowup_monitor_z(const CapillarityModel& model, const ZTrajectory& traj,
                              double gamma = 0.0, double integral_ceiling = 1e6);

}  // namespace ek
