#include "ek/resonance.hpp"

#include <cmath>
#include <fstream>

#include "ek/errors.hpp"

namespace ek {

namespace {
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
}  // namespace

const char* resonance_class_name(ResonanceClass c) {
  switch (c) {
    case ResonanceClass::nonresonant: return "nonresonant";
    case ResonanceClass::time_resonant: return "time_resonant";
    case ResonanceClass::space_resonant: return "space_resonant";
    case ResonanceClass::spacetime_resonant: return "spacetime_resonant";
  }
  return "unknown";
}

double omega_eval(const ResonanceSymbol& sym, const Vec3& xi, const Vec3& eta) {
  const Vec3 d = sub(xi, eta);
  return dot(xi, xi) + sym.sign_eta * dot(eta, eta) + sym.sign_xi_eta * dot(d, d);
}

Vec3 omega_grad_eta(const ResonanceSymbol& sym, const Vec3& xi, const Vec3& eta) {
  // d/deta [s1|eta|^2 + s2|xi-eta|^2] = 2 s1 eta - 2 s2 (xi - eta)
  const Vec3 d = sub(xi, eta);
  Vec3 g;
  for (int i = 0; i < 3; ++i) g[i] = 2.0 * sym.sign_eta * eta[i] - 2.0 * sym.sign_xi_eta * d[i];
  return g;
}

ResonanceClass classify(const ResonanceSymbol& sym, const Vec3& xi, const Vec3& eta,
                        double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCategory::degenerate_input, "tolerance must be positive");
  const Vec3 d = sub(xi, eta);
  const double scale2 = dot(xi, xi) + dot(eta, eta) + dot(d, d);
  const double scale1 = std::sqrt(dot(xi, xi)) + std::sqrt(dot(eta, eta));
  const double om = omega_eval(sym, xi, eta);
  const Vec3 g = omega_grad_eta(sym, xi, eta);
  const double gn = std::sqrt(dot(g, g));
  const bool time_res = std::abs(om) <= tol * scale2;
  const bool space_res = gn <= std::sqrt(tol) * scale1;
  if (time_res && space_res) return ResonanceClass::spacetime_resonant;
  if (time_res) return ResonanceClass::time_resonant;
  if (space_res) return ResonanceClass::space_resonant;
  return ResonanceClass::nonresonant;
}

std::vector<ResonanceMapRow> resonance_map(const ResonanceSymbol& sym, const Vec3& xi,
                                           double span, int samples_per_axis, double tol,
                                           double eta3_fixed, double cap) {
  std::vector<ResonanceMapRow> rows;
  rows.reserve(static_cast<size_t>(samples_per_axis) * samples_per_axis);
  for (int i = 0; i < samples_per_axis; ++i)
    for (int j = 0; j < samples_per_axis; ++j) {
      ResonanceMapRow r;
      r.eta = {-span + 2.0 * span * i / (samples_per_axis - 1),
               -span + 2.0 * span * j / (samples_per_axis - 1), eta3_fixed};
      r.omega = omega_eval(sym, xi, r.eta);
      const Vec3 g = omega_grad_eta(sym, xi, r.eta);
      r.grad_norm = std::sqrt(dot(g, g));
      r.inv_omega_capped = std::min(cap, 1.0 / std::max(std::abs(r.omega), 1.0 / cap));
      r.label = classify(sym, xi, r.eta, tol);
      rows.push_back(r);
    }
  return rows;
}

void write_resonance_csv(const std::string& path, const std::vector<ResonanceMapRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io, "cannot open " + path);
  out << "eta1,eta2,eta3,omega,grad_eta_norm,inv_omega_capped,label\n";
  out.precision(15);
  for (const auto& r : rows)
    out << r.eta[0] << ',' << r.eta[1] << ',' << r.eta[2] << ',' << r.omega << ','
        << r.grad_norm << ',' << r.inv_omega_capped << ',' << resonance_class_name(r.label)
        << '\n';
}

}  // namespace ek
