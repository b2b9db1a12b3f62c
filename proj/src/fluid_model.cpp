#include "ek/fluid_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ek/errors.hpp"
#include "ek/littlewood_paley.hpp"
#include "ek/spectral.hpp"

namespace ek {

namespace {
// Derivatives of the inverse function R = L^{-1} at 0 from L-derivatives at 1.
struct InverseDerivs {
  double r1, r2, r3;
};
InverseDerivs inverse_derivs(double L1, double L2, double L3) {
  InverseDerivs d;
  d.r1 = 1.0 / L1;
  d.r2 = -L2 / (L1 * L1 * L1);
  d.r3 = (3.0 * L2 * L2 - L1 * L3) / std::pow(L1, 5);
  return d;
}
}  // namespace

CapillarityModel CapillarityModel::quantum(double kappa0, Pressure p, DensityInterval J) {
  return power(kappa0, -1.0, std::move(p), J);
}
CapillarityModel CapillarityModel::constant(double kappa0, Pressure p, DensityInterval J) {
  return power(kappa0, 0.0, std::move(p), J);
}
CapillarityModel CapillarityModel::power(double kappa0, double m, Pressure p, DensityInterval J) {
  if (!(kappa0 > 0.0))
    throw Error(ErrorCategory::degenerate_input, "capillarity coefficient must be positive");
  if (!(J.lo > 0.0 && J.hi > J.lo) || J.lo > 1.0 || J.hi < 1.0)
    throw Error(ErrorCategory::degenerate_input, "density interval must contain 1");
  CapillarityModel mdl;
  mdl.kappa0_ = kappa0;
  mdl.m_ = m;
  mdl.P_ = std::move(p);
  mdl.J_ = J;
  std::ostringstream ss;
  if (m == -1.0) ss << "quantum kappa0=" << kappa0;
  else if (m == 0.0) ss << "constant kappa0=" << kappa0;
  else ss << "power kappa0=" << kappa0 << " m=" << m;
  mdl.name_ = ss.str();
  return mdl;
}

CapillarityModel CapillarityModel::synthetic(double c_a, double c_g) {
  CapillarityModel mdl;
  mdl.synthetic_ = true;
  mdl.syn_ca_ = c_a;
  mdl.syn_cg_ = c_g;
  std::ostringstream ss;
  ss << "synthetic c_a=" << c_a << " c_g=" << c_g;
  mdl.name_ = ss.str();
  return mdl;
}

bool CapillarityModel::z_normalized() const {
  return synthetic_ || std::abs(kappa0_ - 1.0) < 1e-14;
}

std::string CapillarityModel::describe() const { return name_; }

void CapillarityModel::check_rho(double rho) const {
  if (synthetic_)
    throw Error(ErrorCategory::degenerate_input,
                "synthetic closure model has no density-side functions");
  if (!(rho >= J_.lo && rho <= J_.hi))
    throw Error(ErrorCategory::density_range, "rho outside working interval");
}

template <class T>
T CapillarityModel::rho_pow(T rho, double q) const {
  using std::pow;
  if (q == 0.0) return T{1.0};
  return pow(rho, q);
}

double CapillarityModel::kappa(double rho) const {
  check_rho(rho);
  return kappa0_ * rho_pow(rho, m_);
}
double CapillarityModel::dkappa(double rho) const {
  check_rho(rho);
  return kappa0_ * m_ * rho_pow(rho, m_ - 1.0);
}
double CapillarityModel::a(double rho) const {
  check_rho(rho);
  return std::sqrt(kappa0_) * rho_pow(rho, 0.5 * (m_ + 1.0));
}
double CapillarityModel::da(double rho) const {
  check_rho(rho);
  const double q = 0.5 * (m_ + 1.0);
  return std::sqrt(kappa0_) * q * rho_pow(rho, q - 1.0);
}

double CapillarityModel::ell_of_rho(double rho) const {
  check_rho(rho);
  const double sk = std::sqrt(kappa0_);
  if (m_ == -1.0) return sk * std::log(rho);
  const double q = 0.5 * (m_ + 1.0);
  return sk * (rho_pow(rho, q) - 1.0) / q;
}

double CapillarityModel::Linv_raw(double ell) const {
  const double sk = std::sqrt(kappa0_);
  if (m_ == -1.0) return std::exp(ell / sk);
  const double q = 0.5 * (m_ + 1.0);
  const double base = 1.0 + q * ell / sk;
  if (base <= 0.0) throw Error(ErrorCategory::density_range, "ell outside L(J)");
  return std::pow(base, 1.0 / q);
}

double CapillarityModel::rho_of_ell(double ell) const {
  if (synthetic_)
    throw Error(ErrorCategory::degenerate_input,
                "synthetic closure model has no density-side functions");
  const double rho = Linv_raw(ell);
  const double tol = 1e-9;
  if (!(rho >= J_.lo * (1.0 - tol) && rho <= J_.hi * (1.0 + tol)))
    throw Error(ErrorCategory::density_range, "ell outside L(J)");
  return std::clamp(rho, J_.lo, J_.hi);
}

double CapillarityModel::g_of_rho(double rho) const {
  check_rho(rho);
  // P'(s) = sum_k k c_k (s-1)^{k-1}; expand to the monomial basis and use
  // int s^j / s ds termwise: a0 ln rho + sum_{j>=1} a_j (rho^j - 1)/j.
  std::vector<double> mono(P_.coeff.size() + 2, 0.0);
  for (size_t i = 0; i < P_.coeff.size(); ++i) {
    const int k = static_cast<int>(i) + 2;
    // k c (s-1)^{k-1}: binomial expansion
    double binom = 1.0;
    for (int j = 0; j <= k - 1; ++j) {
      // coefficient of s^j in (s-1)^{k-1}
      // binom holds C(k-1, j) * (-1)^{k-1-j}
      double c = 1.0;
      for (int q = 0; q < j; ++q) c = c * (k - 1 - q) / (q + 1);
      const double sign = ((k - 1 - j) % 2 == 0) ? 1.0 : -1.0;
      mono[j] += k * P_.coeff[i] * c * sign;
    }
    (void)binom;
  }
  double acc = mono[0] * std::log(rho);
  for (size_t j = 1; j < mono.size(); ++j)
    if (mono[j] != 0.0) acc += mono[j] * (std::pow(rho, double(j)) - 1.0) / double(j);
  return acc;
}

double CapillarityModel::bulk_energy(double rho) const {
  check_rho(rho);
  std::vector<double> mono(P_.coeff.size() + 2, 0.0);
  for (size_t i = 0; i < P_.coeff.size(); ++i) {
    const int k = static_cast<int>(i) + 2;
    for (int j = 0; j <= k - 1; ++j) {
      double c = 1.0;
      for (int q = 0; q < j; ++q) c = c * (k - 1 - q) / (q + 1);
      const double sign = ((k - 1 - j) % 2 == 0) ? 1.0 : -1.0;
      mono[j] += k * P_.coeff[i] * c * sign;
    }
  }
  // W = int_1^rho g, with g = a0 ln s + sum_j a_j (s^j - 1)/j
  double acc = mono[0] * (rho * std::log(rho) - rho + 1.0);
  for (size_t j = 1; j < mono.size(); ++j) {
    if (mono[j] == 0.0) continue;
    const double dj = double(j);
    acc += mono[j] * ((std::pow(rho, dj + 1.0) - 1.0) / (dj * (dj + 1.0)) - (rho - 1.0) / dj);
  }
  return acc;
}

double CapillarityModel::gauge_phi(double rho, double gamma) const {
  check_rho(rho);
  return std::sqrt(rho) * std::pow(a(rho), gamma);
}

double CapillarityModel::gauge_ode_residual(double rho, double gamma) const {
  check_rho(rho);
  using C = std::complex<double>;
  const double h = 1e-20;
  const double q = 0.5 * (m_ + 1.0);
  auto phi_c = [&](C r) -> C {
    const C av = std::sqrt(kappa0_) * std::pow(r, q);
    return std::sqrt(r) * std::pow(av, gamma);
  };
  const double dphi = phi_c(C{rho, h}).imag() / h;  // complex-step derivative
  const double phi = gauge_phi(rho, gamma);
  return a(rho) / rho + 2.0 * gamma * da(rho) - 2.0 * a(rho) * dphi / phi;
}

double CapillarityModel::delta() const {
  if (synthetic_) return 1.0;
  return 1.0 / std::sqrt(kappa0_);  // kappa(1) = kappa0
}

double CapillarityModel::c_a() const {
  if (synthetic_) return syn_ca_;
  // atilde'(0) = a'(1) * delta
  const double a1p = std::sqrt(kappa0_) * 0.5 * (m_ + 1.0);
  return a1p * delta();
}

double CapillarityModel::c_g() const {
  if (synthetic_) return syn_cg_;
  const double d = delta();
  return 0.5 * P_.d2_at1() * d * d;  // g''(1) = P''(1) since P'(1) = 0
}

double CapillarityModel::atilde(double ell) const {
  if (synthetic_) return syn_ca_ * ell;
  return a(rho_of_ell(ell)) - 1.0;
}

double CapillarityModel::gtilde(double ell) const {
  if (synthetic_) return syn_cg_ * ell * ell;
  return g_of_rho(rho_of_ell(ell));
}

double CapillarityModel::abar(double ell) const {
  if (synthetic_) return syn_ca_ - 1.0;
  if (std::abs(ell) < series_cut) {
    // atilde = c1 l + c2 l^2/2 + ...; abar = (c1 - 1) + (c2/2) l + (c3/6) l^2
    const double sk = std::sqrt(kappa0_);
    const double q = 0.5 * (m_ + 1.0);
    const double L1 = sk, L2 = sk * (q - 1.0), L3 = sk * (q - 1.0) * (q - 2.0);
    const auto R = inverse_derivs(L1, L2, L3);
    const double a1 = sk * q, a2 = sk * q * (q - 1.0), a3 = sk * q * (q - 1.0) * (q - 2.0);
    const double c1 = a1 * R.r1;
    const double c2 = a2 * R.r1 * R.r1 + a1 * R.r2;
    const double c3 = a3 * R.r1 * R.r1 * R.r1 + 3.0 * a2 * R.r1 * R.r2 + a1 * R.r3;
    return (c1 - 1.0) + 0.5 * c2 * ell + (c3 / 6.0) * ell * ell;
  }
  return atilde(ell) / ell - 1.0;
}

double CapillarityModel::gbar(double ell) const {
  if (synthetic_) return syn_cg_ * ell;
  if (std::abs(ell) < series_cut) {
    const double sk = std::sqrt(kappa0_);
    const double q = 0.5 * (m_ + 1.0);
    const auto R = inverse_derivs(sk, sk * (q - 1.0), sk * (q - 1.0) * (q - 2.0));
    const double g2 = P_.d2_at1();                    // g''(1)
    const double g3 = P_.d3_at1() - 2.0 * P_.d2_at1();  // g'''(1)
    const double gt2 = g2 * R.r1 * R.r1;              // gtilde''(0)
    const double gt3 = g3 * R.r1 * R.r1 * R.r1 + 3.0 * g2 * R.r1 * R.r2;
    return 0.5 * gt2 * ell + (gt3 / 6.0) * ell * ell;
  }
  return gtilde(ell) / ell;
}

double CapillarityModel::ell_lo() const {
  if (synthetic_) return -1e30;
  const double sk = std::sqrt(kappa0_);
  return m_ == -1.0 ? sk * std::log(J_.lo)
                    : sk * (std::pow(J_.lo, 0.5 * (m_ + 1.0)) - 1.0) / (0.5 * (m_ + 1.0));
}
double CapillarityModel::ell_hi() const {
  if (synthetic_) return 1e30;
  const double sk = std::sqrt(kappa0_);
  return m_ == -1.0 ? sk * std::log(J_.hi)
                    : sk * (std::pow(J_.hi, 0.5 * (m_ + 1.0)) - 1.0) / (0.5 * (m_ + 1.0));
}

ProfileNormReport profile_norms(const SpectralField& phi, double s_reg,
                                double smallness_threshold) {
  ProfileNormReport r;
  const Grid& g = phi.grid();
  const SpectralField ph = to_physical(phi);

  r.mean_zero = std::abs(mean(ph)) <= 1e-12 * (1.0 + sup_norm(ph));
  if (!r.mean_zero)
    throw Error(ErrorCategory::degenerate_input,
                "profile must have a vanishing zero mode (Hdot^{-2} admissibility)");

  r.h_high = sobolev_norm(ph, 3.0 * s_reg + 7.0);
  r.hdot_m2 = sobolev_norm(ph, -2.0, true);
  r.b111 = besov_b111(ph);

  // x^2-weighted H^1 with x measured from the box center
  SpectralField w = ph;
  const int d = g.dim();
  int idx[3];
  for (std::int64_t i = 0; i < w.size(); ++i) {
    g.unravel(i, idx);
    double x2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double x = idx[a] * g.spacing(a) - 0.5 * g.box()[a];
      x2 += x * x;
    }
    w[i] *= x2;
  }
  r.x2_h1 = sobolev_norm(w, 1.0);

  r.epsilon0 = r.h_high + r.hdot_m2 + r.b111 + r.x2_h1;
  r.bandwidth = bandwidth(ph);
  r.wrap_horizon = wrap_horizon(ph);

  // boundary tail: profiles are centered at the box center, so the periodic
  // seam (index-0 plane of each axis) is the boundary
  const double s = sup_norm(ph);
  double face = 0.0;
  for (std::int64_t i = 0; i < ph.size(); ++i) {
    g.unravel(i, idx);
    bool on_face = false;
    for (int a = 0; a < d; ++a)
      if (idx[a] == 0) on_face = true;
    if (on_face) face = std::max(face, std::abs(ph[i]));
  }
  r.boundary_tail = s > 0 ? face / s : 0.0;
  r.interior_support = r.boundary_tail <= 1e-10;
  r.admissible = r.mean_zero && r.epsilon0 < smallness_threshold;
  return r;
}

}  // namespace ek
