#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ek/dynamics.hpp"
#include "ek/fluid_model.hpp"

namespace ek {

enum class ProfileGenerator { gaussian_dipole, ring_packet, user_snapshot };

/// Parameters of the scattering datum phi. Spectral generators build the
/// field directly from lattice Fourier coefficients, centered at the box
/// center, real-valued and mean-zero by construction.
struct ProfileSpec {
  ProfileGenerator generator = ProfileGenerator::ring_packet;
  double amplitude = 1e-2;  // sup norm of the realized field

  // gaussian_dipole: i A xi_1 exp(-w^2|xi|^2/2), rolled off smoothly between
  // window_lo and window_hi (fractions of the per-axis Nyquist frequency)
  double width = 0.85;
  double window_lo = 0.76;
  double window_hi = 0.98;

  // ring_packet: i A xi_1 exp(-(|xi|-ring_radius)^2/(2 ring_width^2)) with an
  // erfc roll-off at absolute frequency roll_center, roll_width
  double ring_radius = 1.3;
  double ring_width = 0.25;
  double roll_center = 1.75;
  double roll_width = 0.12;

  std::string snapshot_path;  // user_snapshot
};

struct Profile {
  SpectralField field;  // physical representation, real-valued
  ProfileNormReport norms;
};

Profile make_profile(const Grid& grid, const ProfileSpec& spec, double s_reg = 2.6,
                     double smallness_threshold = 1e3);

struct ExperimentPlan {
  std::vector<double> T_n{8.0, 16.0, 32.0};
  double s_reg = 2.6;
  double t_lo = 1.0;           // earliest sample time
  double sample_cadence = 0.5;
  double quad_panel = 0.5;     // max Duhamel panel width
  int quad_nodes = 6;          // Gauss-Legendre nodes per panel
  double quad_tol = 1e-8;      // node-doubling acceptance
  double epsilon0_threshold = 1e3;
};

/// Sample times [t_lo, min(T_n, t*)] at the plan cadence.
std::vector<double> sample_times(const ExperimentPlan& plan, double Tn, double tstar);

/// Fit window [2, min(T_n, t*)/2].
std::pair<double, double> fit_window(double Tn, double tstar);

struct DecayFitResult {
  double slope = 0.0;
  double intercept = 0.0;  // log-intercept
  double residual = 0.0;   // rms of log misfit
  int samples = 0;
};

struct DecaySeries {
  std::vector<double> t;
  std::vector<double> value;
  double window_lo = 0.0, window_hi = 0.0;
  double wrap_horizon = 0.0;
  DecayFitResult fit;
};

/// Least squares on (log t, log value) inside [window_lo, window_hi].
DecayFitResult decay_fit(const std::vector<double>& t, const std::vector<double>& value,
                         double window_lo, double window_hi);

/// z1(t) = e^{it Lap} phi.
SpectralField linear_profile_z1(const Profile& phi, double t);

/// Second approximation z2(t) = int_{T_n}^t e^{i(t-s)Lap}(N^2+N^3)(z1(s)) ds
/// by composite Gauss-Legendre quadrature with the propagator applied exactly
/// at every node. With check_convergence the node count is doubled and the
/// results must agree to quad_tol in relative L2.
SpectralField duhamel_z2(const CapillarityModel& model, const Profile& phi, double Tn,
                         double t, const ExperimentPlan& plan, bool check_convergence = true);

/// z2 evaluated at every requested time by marching the accumulated integral
/// backward from T_n (exact propagator composition between sample times).
std::vector<SpectralField> z2_series(const CapillarityModel& model, const Profile& phi,
                                     double Tn, const std::vector<double>& times,
                                     const ExperimentPlan& plan);

/// z_{2,2}(t) = -(i/2) int_{T_n}^t e^{i(t-s)Lap}(c_g |z1|^2 + c_a |grad z1|^2) ds.
/// The paper's display is the normalized case c_a = c_g = 1.
SpectralField z22_part(const CapillarityModel& model, const Profile& phi, double Tn,
                       double t, const ExperimentPlan& plan);

/// Re z_{2,2} through the subtract-the-identity route:
/// (1/2) Im int_{T_n}^t (e^{i(t-s)Lap} - 1) (c_g|z1|^2 + c_a|grad z1|^2) ds,
/// exact because the integrand is real.
SpectralField re_z22_identity_path(const CapillarityModel& model, const Profile& phi,
                                   double Tn, double t, const ExperimentPlan& plan);

struct FinalDataDiagnostics {
  double tstar = 0.0;
  bool blowup_flag = false;  // density-range or rejection trouble
  std::string note;
};

/// Backward solve of the final-data problem: z(T_n) = e^{i T_n Lap} phi,
/// integrated down to plan.t_lo with snapshots at the sample times.
ZTrajectory final_data_solve(const CapillarityModel& model, const SolverConfig& cfg,
                             const Profile& phi, double Tn, const ExperimentPlan& plan,
                             FinalDataDiagnostics* diag = nullptr);

struct BootstrapResult {
  DecaySeries series;  // value = t^{3/2} ||z - z1 - z2||_{H^{s_reg+1}}
  double Z = 0.0;      // running supremum over the sampled window
};

BootstrapResult bootstrap_Z(const CapillarityModel& model, const ZTrajectory& traj,
                            const Profile& phi, double Tn, const ExperimentPlan& plan);

/// J(t) f = e^{it Lap}( x . e^{-it Lap} f ) componentwise, x from the box
/// center. Equals (x + 2it grad) f on interior-supported fields.
std::vector<SpectralField> vector_field_J(const SpectralField& f, double t,
                                          bool* wrap_warning = nullptr);

/// Measured constant c in  (1/(it))(conj(f) Jg - g conj(Jf)) = c * grad(conj(f) g)
/// for free solutions f = g = e^{it Lap} phi.
double vector_field_identity_constant(const Profile& phi, double t);

struct ScatteringErrorSeries {
  DecaySeries rho_err;  // || rho - 1 - delta Re e^{itL} phi ||_L2
  DecaySeries u_err;    // || u - Im e^{itL} grad phi ||_L2
};

ScatteringErrorSeries scattering_error(const CapillarityModel& model, const ZTrajectory& traj,
                                       const Profile& phi, double Tn,
                                       const ExperimentPlan& plan);

}  // namespace ek
