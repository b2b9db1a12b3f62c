#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ek/field.hpp"

namespace ek {

/// Polynomial pressure P(rho) = P0 + sum_{k>=2} c_k (rho-1)^k.
/// Terms start at k = 2 so P'(1) = 0 (zero sound speed) holds by construction.
/// The default is the cubic P0 + (rho-1)^3.
struct Pressure {
  double P0 = 1.0;
  std::vector<double> coeff;  // coeff[i] multiplies (rho-1)^(i+2)

  static Pressure cubic(double P0 = 1.0) { return {P0, {0.0, 1.0}}; }
  static Pressure poly(double P0, std::vector<double> c_from_quadratic) {
    return {P0, std::move(c_from_quadratic)};
  }

  template <class T>
  T eval(T rho) const {
    T acc{P0};
    T pw = (rho - 1.0) * (rho - 1.0);
    for (double c : coeff) {
      acc += c * pw;
      pw *= (rho - 1.0);
    }
    return acc;
  }
  template <class T>
  T d1(T rho) const {
    T acc{0.0};
    T pw = rho - 1.0;
    for (size_t i = 0; i < coeff.size(); ++i) {
      acc += static_cast<double>(i + 2) * coeff[i] * pw;
      pw *= (rho - 1.0);
    }
    return acc;
  }
  double d2_at1() const { return coeff.empty() ? 0.0 : 2.0 * coeff[0]; }
  double d3_at1() const { return coeff.size() < 2 ? 0.0 : 6.0 * coeff[1]; }
};

struct DensityInterval {
  double lo = 0.2;
  double hi = 5.0;
};

/// Constitutive bundle for one capillary fluid: kappa, a = sqrt(rho kappa),
/// the variable change L and its inverse, the chemical-potential composites
/// and the gauge weight. All three kappa families are the power law
/// kappa0 * rho^m (quantum m = -1, constant m = 0).
///
/// A synthetic polynomial-closure variant carries exactly linear atilde and
/// exactly quadratic gtilde; it serves the z-form algebra only and has no
/// primitive-side constitutive functions.
class CapillarityModel {
 public:
  static CapillarityModel quantum(double kappa0 = 1.0, Pressure p = Pressure::cubic(),
                                  DensityInterval J = {});
  static CapillarityModel constant(double kappa0 = 1.0, Pressure p = Pressure::cubic(),
                                   DensityInterval J = {});
  static CapillarityModel power(double kappa0, double m, Pressure p = Pressure::cubic(),
                                DensityInterval J = {});
  static CapillarityModel synthetic(double c_a, double c_g);

  bool is_synthetic() const { return synthetic_; }
  /// z-form modules need the kappa(1) = 1 normalization (a(1) = 1, delta = 1).
  bool z_normalized() const;
  const DensityInterval& density_interval() const { return J_; }
  std::string describe() const;

  // constitutive functions of the density (not available for synthetic models)
  double kappa(double rho) const;
  double dkappa(double rho) const;
  double a(double rho) const;
  double da(double rho) const;
  double ell_of_rho(double rho) const;       // L(rho), checks rho in J
  double rho_of_ell(double ell) const;       // L^{-1}, checks result in J
  double g_of_rho(double rho) const;         // int_1^rho P'(s)/s ds, closed form
  double bulk_energy(double rho) const;      // W with W' = g, W(1) = 0
  double gauge_phi(double rho, double gamma) const;  // sqrt(rho) * a(rho)^gamma
  /// Residual of the gauge ODE a/rho + 2 gamma a' - 2 a phi'/phi with phi'
  /// taken by complex-step differentiation of the closed form.
  double gauge_ode_residual(double rho, double gamma) const;

  // composite closures of ell (synthetic models use their polynomial closures)
  double atilde(double ell) const;  // a(L^{-1}(ell)) - 1
  double gtilde(double ell) const;  // g(L^{-1}(ell))
  double abar(double ell) const;    // atilde/ell - 1, continuous at 0
  double gbar(double ell) const;    // gtilde/ell, gbar(0) = 0

  // scattering-expansion scalars
  double delta() const;  // (L^{-1})'(0) = kappa(1)^{-1/2}
  double c_a() const;    // atilde'(0)
  double c_g() const;    // gtilde''(0)/2

  /// Range of admissible ell values L(J).
  double ell_lo() const;
  double ell_hi() const;

  /// Interval half-width below which the composite closures switch to their
  /// Taylor branch (cancellation guard).
  static constexpr double series_cut = 1e-4;

 private:
  CapillarityModel() = default;
  template <class T>
  T rho_pow(T rho, double q) const;
  double Linv_raw(double ell) const;
  void check_rho(double rho) const;

  bool synthetic_ = false;
  double kappa0_ = 1.0;
  double m_ = -1.0;  // kappa exponent
  Pressure P_;
  DensityInterval J_;
  double syn_ca_ = 0.0, syn_cg_ = 0.0;
  std::string name_;
};

/// Norm report for a scattering profile (Theorem-hypothesis bookkeeping).
struct ProfileNormReport {
  double h_high = 0.0;       // H^{3 s_reg + 7}
  double hdot_m2 = 0.0;      // homogeneous H^{-2}
  double b111 = 0.0;         // inhomogeneous B^1_{1,1}
  double x2_h1 = 0.0;        // ||x^2 phi||_{H^1}, x from the box center
  double epsilon0 = 0.0;     // sum of the four
  double bandwidth = 0.0;
  double wrap_horizon = 0.0;
  double boundary_tail = 0.0;  // relative sup on the boundary faces
  bool mean_zero = false;
  bool interior_support = false;  // boundary tail below 1e-10
  bool admissible = false;        // mean_zero && epsilon0 < threshold
};

ProfileNormReport profile_norms(const SpectralField& phi, double s_reg,
                                double smallness_threshold);

}  // namespace ek
