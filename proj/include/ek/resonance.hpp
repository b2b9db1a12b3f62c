#pragma once

#include <array>
#include <string>
#include <vector>

namespace ek {

/// Bilinear phase Omega(xi, eta) = |xi|^2 + s1 |eta|^2 + s2 |xi - eta|^2
/// with a sign pair (s1, s2) in {+1, -1}^2.
struct ResonanceSymbol {
  int sign_eta;      // s1
  int sign_xi_eta;   // s2
};

enum class ResonanceClass { nonresonant, time_resonant, space_resonant, spacetime_resonant };

const char* resonance_class_name(ResonanceClass c);

using Vec3 = std::array<double, 3>;

double omega_eval(const ResonanceSymbol& sym, const Vec3& xi, const Vec3& eta);
Vec3 omega_grad_eta(const ResonanceSymbol& sym, const Vec3& xi, const Vec3& eta);

/// Relative-tolerance membership: time-resonant when
/// |Omega| <= tol (|xi|^2+|eta|^2+|xi-eta|^2), space-resonant when
/// |grad_eta Omega| <= sqrt(tol) (|xi|+|eta|); both at once is
/// spacetime-resonant. Scale-invariant by construction.
ResonanceClass classify(const ResonanceSymbol& sym, const Vec3& xi, const Vec3& eta,
                        double tol);

struct ResonanceMapRow {
  Vec3 eta;
  double omega;
  double grad_norm;
  double inv_omega_capped;
  ResonanceClass label;
};

/// 2-D eta-section at fixed xi: eta = (e1, e2, eta3_fixed) scanned over a
/// uniform [-span, span]^2 grid; |Omega|^{-1} is capped at `cap`.
std::vector<ResonanceMapRow> resonance_map(const ResonanceSymbol& sym, const Vec3& xi,
                                           double span, int samples_per_axis, double tol,
                                           double eta3_fixed = 0.0, double cap = 1e6);

/// CSV export: eta1, eta2, eta3, omega, grad_norm, inv_omega_capped, label.
void write_resonance_csv(const std::string& path, const std::vector<ResonanceMapRow>& rows);

}  // namespace ek
