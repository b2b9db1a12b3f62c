#pragma once

#include <functional>
#include <vector>

#include "ek/fluid_model.hpp"
#include "ek/madelung.hpp"

namespace ek {

enum class Scheme { strang_split_rk4, etd_rk4, rk4_pseudospectral };

struct SolverConfig {
  double dt = 0.01;
  Scheme scheme = Scheme::etd_rk4;
  bool dealias = true;
  bool linear_only = false;  // drop every nonlinear term (free flow)
  int defect_check_interval = 16;  // steps between dt-vs-dt/2 defect checks (0 = off)
  double defect_tol = 1e-8;
  int max_step_rejections = 8;
};

/// div K(rho) = rho grad(kappa(rho) Lap rho + (1/2) kappa'(rho)|grad rho|^2),
/// evaluated pseudospectrally with dealiasing.
std::vector<SpectralField> korteweg_divK(const CapillarityModel& model,
                                         const SpectralField& rho, bool dealias = true);

/// Full nonlinearity of the z-form: with dz/dt = i Lap z + F(z),
/// F(z) = -grad psi . grad ell + i((1/2)|grad ell|^2 - (1/2)|grad psi|^2
///        - gtilde(ell)) + i atilde(ell) Lap z.
SpectralField full_nonlinearity_F(const CapillarityModel& model, const SpectralField& z,
                                  bool dealias = true);

/// Quadratic part, complex display with the constitutive coefficients:
/// (i/4)(2 (grad z)^2 - c_g (z^2 + conj(z)^2 + 2|z|^2)
///       + 2 c_a (z Lap z + conj(z) Lap z)).
SpectralField quadratic_part_N2(const CapillarityModel& model, const SpectralField& z,
                                bool dealias = true);

/// Real-variable evaluation of the same quadratic part (identity-check route):
/// -grad psi.grad ell + i((1/2)|grad ell|^2 - (1/2)|grad psi|^2 - c_g ell^2
///                        + c_a ell Lap z).
SpectralField quadratic_part_real_form(const CapillarityModel& model, const SpectralField& z,
                                       bool dealias = true);

/// Exact cubic-and-higher remainder F - N^2.
SpectralField cubic_remainder_N3(const CapillarityModel& model, const SpectralField& z,
                                 bool dealias = true);

struct ZTrajectory {
  std::vector<double> times;
  std::vector<SpectralField> z;
  int rejected_steps = 0;
  double max_defect = 0.0;
};

SpectralField step_z(const CapillarityModel& model, const SolverConfig& cfg,
                     const SpectralField& z, double dt);
/// March from t0 to t1 (either direction); snapshots at the requested times
/// (clipped to [min(t0,t1), max(t0,t1)], endpoints always included).
ZTrajectory evolve_z(const CapillarityModel& model, const SolverConfig& cfg,
                     const SpectralField& z0, double t0, double t1,
                     const std::vector<double>& snapshot_times = {});

struct MonitorRow {
  double t;
  double mass;         // integral of rho - 1
  double hamiltonian;
  double ell_sup;      // ||L(rho)||_inf
  double divu_sup;     // ||div u||_inf
};

struct PrimitiveTrajectory {
  std::vector<double> times;
  std::vector<FluidState> states;
  std::vector<MonitorRow> monitors;
};

FluidState step_primitive(const CapillarityModel& model, const SolverConfig& cfg,
                          const FluidState& s, double dt);
PrimitiveTrajectory evolve_primitive(const CapillarityModel& model, const SolverConfig& cfg,
                                     const FluidState& s0, double t0, double t1,
                                     const std::vector<double>& snapshot_times = {});

/// E = integral of (1/2) rho |u|^2 + W(rho) + (1/2) kappa(rho)|grad rho|^2,
/// W' = g, W(1) = 0. Conserved by the exact flow.
double hamiltonian(const CapillarityModel& model, const FluidState& s);

/// Largest stable step for the scheme's stiffest retained mode.
/// rk4_pseudospectral integrates the dispersive wave a(rho)|xi|^2 explicitly:
///   dt = safety * 2sqrt2 / (a_max |xi|_max^2).
/// The split/exponential schemes treat the linear part exactly; the bound
/// comes from the explicitly treated quasi-linear term with coefficient
/// max(|atilde|, 1/4) on L(J):
///   dt = safety * 2sqrt2 / (max(|atilde|, 1/4) |xi|_max^2).
double stability_dt(const CapillarityModel& model, const Grid& grid, Scheme scheme,
                    double safety = 0.8);

}  // namespace ek
