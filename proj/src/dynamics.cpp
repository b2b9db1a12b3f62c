#include "ek/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "ek/errors.hpp"
#include "ek/spectral.hpp"

namespace ek {

namespace {

SpectralField maybe_dealias(SpectralField f, bool on) {
  return on ? dealias(std::move(f)) : std::move(f);
}

void check_ell_range(const CapillarityModel& model, const SpectralField& z_phys) {
  if (model.is_synthetic()) return;
  double lo = 1e300, hi = -1e300;
  for (const auto& v : z_phys.data()) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  if (lo < model.ell_lo() || hi > model.ell_hi())
    throw Error(ErrorCategory::density_range, "ell left L(J)");
}

struct ZDerivatives {
  SpectralField zh;                 // fourier
  std::vector<SpectralField> dz;    // physical, per axis
  SpectralField lap;                // physical
};

ZDerivatives z_derivatives(const SpectralField& z) {
  ZDerivatives d{to_fourier(z), {}, SpectralField(z.grid(), Rep::physical)};
  const Grid& g = z.grid();
  for (int a = 0; a < g.dim(); ++a) d.dz.push_back(to_physical(partial(d.zh, a)));
  SpectralField laph = d.zh;
  const auto& xi2 = g.xi2_table();
  for (std::int64_t i = 0; i < laph.size(); ++i) laph[i] *= -xi2[i];
  d.lap = to_physical(laph);
  return d;
}

}  // namespace

std::vector<SpectralField> korteweg_divK(const CapillarityModel& model,
                                         const SpectralField& rho, bool do_dealias) {
  const Grid& g = rho.grid();
  const SpectralField rp = to_physical(rho);
  SpectralField lap = laplacian(rp);
  std::vector<SpectralField> dr;
  for (int a = 0; a < g.dim(); ++a) dr.push_back(to_physical(partial(rp, a)));

  SpectralField pot(g, Rep::physical);
  for (std::int64_t i = 0; i < pot.size(); ++i) {
    const double r = rp[i].real();
    double grad2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) grad2 += dr[a][i].real() * dr[a][i].real();
    pot[i] = model.kappa(r) * lap[i].real() + 0.5 * model.dkappa(r) * grad2;
  }
  pot = maybe_dealias(std::move(pot), do_dealias);

  std::vector<SpectralField> out;
  for (int a = 0; a < g.dim(); ++a) {
    SpectralField comp = to_physical(partial(pot, a));
    for (std::int64_t i = 0; i < comp.size(); ++i) comp[i] *= rp[i].real();
    out.push_back(maybe_dealias(std::move(comp), do_dealias));
  }
  return out;
}

SpectralField full_nonlinearity_F(const CapillarityModel& model, const SpectralField& z,
                                  bool do_dealias) {
  const SpectralField zp = to_physical(z);
  check_ell_range(model, zp);
  const Grid& g = z.grid();
  ZDerivatives d = z_derivatives(zp);
  SpectralField out(g, Rep::physical);
  for (std::int64_t i = 0; i < out.size(); ++i) {
    const double ell = zp[i].real();
    double adv = 0.0, gl2 = 0.0, gp2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double dl = d.dz[a][i].real(), dp = d.dz[a][i].imag();
      adv += dp * dl;
      gl2 += dl * dl;
      gp2 += dp * dp;
    }
    out[i] = cplx{-adv, 0.5 * gl2 - 0.5 * gp2 - model.gtilde(ell)} +
             cplx{0.0, model.atilde(ell)} * d.lap[i];
  }
  return maybe_dealias(std::move(out), do_dealias);
}

SpectralField quadratic_part_N2(const CapillarityModel& model, const SpectralField& z,
                                bool do_dealias) {
  const SpectralField zp = to_physical(z);
  const Grid& g = z.grid();
  ZDerivatives d = z_derivatives(zp);
  const double ca = model.c_a(), cg = model.c_g();
  SpectralField out(g, Rep::physical);
  for (std::int64_t i = 0; i < out.size(); ++i) {
    const cplx zi = zp[i];
    cplx grad_sq{0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) grad_sq += d.dz[a][i] * d.dz[a][i];
    const cplx zb = std::conj(zi);
    out[i] = cplx{0.0, 0.25} *
             (2.0 * grad_sq - cg * (zi * zi + zb * zb + 2.0 * std::norm(zi)) +
              2.0 * ca * (zi + zb) * d.lap[i]);
  }
  return maybe_dealias(std::move(out), do_dealias);
}

SpectralField quadratic_part_real_form(const CapillarityModel& model, const SpectralField& z,
                                       bool do_dealias) {
  const SpectralField zp = to_physical(z);
  const Grid& g = z.grid();
  ZDerivatives d = z_derivatives(zp);
  const double ca = model.c_a(), cg = model.c_g();
  SpectralField out(g, Rep::physical);
  for (std::int64_t i = 0; i < out.size(); ++i) {
    const double ell = zp[i].real();
    double adv = 0.0, gl2 = 0.0, gp2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double dl = d.dz[a][i].real(), dp = d.dz[a][i].imag();
      adv += dp * dl;
      gl2 += dl * dl;
      gp2 += dp * dp;
    }
    out[i] = cplx{-adv, 0.5 * gl2 - 0.5 * gp2 - cg * ell * ell} +
             cplx{0.0, ca * ell} * d.lap[i];
  }
  return maybe_dealias(std::move(out), do_dealias);
}

SpectralField cubic_remainder_N3(const CapillarityModel& model, const SpectralField& z,
                                 bool do_dealias) {
  SpectralField f = full_nonlinearity_F(model, z, do_dealias);
  f -= quadratic_part_N2(model, z, do_dealias);
  return f;
}

namespace {

// --- z-form steppers ------------------------------------------------------

SpectralField half_propagate(const SpectralField& z, double dt) {
  return free_propagate(z, dt);
}

SpectralField rk4_on_F(const CapillarityModel& model, const SolverConfig& cfg,
                       const SpectralField& z, double dt) {
  auto F = [&](const SpectralField& w) {
    return full_nonlinearity_F(model, w, cfg.dealias);
  };
  SpectralField k1 = F(z);
  SpectralField k2 = F(z + (0.5 * dt) * k1);
  SpectralField k3 = F(z + (0.5 * dt) * k2);
  SpectralField k4 = F(z + dt * k3);
  SpectralField out = z;
  out += (dt / 6.0) * k1;
  out += (dt / 3.0) * k2;
  out += (dt / 3.0) * k3;
  out += (dt / 6.0) * k4;
  return out;
}

SpectralField strang_step(const CapillarityModel& model, const SolverConfig& cfg,
                          const SpectralField& z, double dt) {
  SpectralField half = half_propagate(z, 0.5 * dt);
  if (!cfg.linear_only) half = rk4_on_F(model, cfg, to_physical(half), dt);
  return half_propagate(half, 0.5 * dt);
}

// phi-functions phi1, phi2, phi3 for purely imaginary arguments, series near 0.
void phi_functions(cplx zz, cplx& p1, cplx& p2, cplx& p3) {
  if (std::abs(zz) < 0.25) {
    // phi_k(z) = sum_{n>=0} z^n / (n+k)!
    cplx t1{0.0, 0.0}, t2{0.0, 0.0}, t3{0.0, 0.0}, pw{1.0, 0.0};
    double fact = 1.0;  // n!
    for (int n = 0; n < 14; ++n) {
      t1 += pw / (fact * (n + 1.0));
      t2 += pw / (fact * (n + 1.0) * (n + 2.0));
      t3 += pw / (fact * (n + 1.0) * (n + 2.0) * (n + 3.0));
      pw *= zz;
      fact *= (n + 1.0);
    }
    p1 = t1; p2 = t2; p3 = t3;
    return;
  }
  const cplx e = std::exp(zz);
  p1 = (e - 1.0) / zz;
  p2 = (p1 - 1.0) / zz;
  p3 = (p2 - 0.5) / zz;
}

// Cox-Matthews ETDRK4 with the diagonal linear symbol lambda = -i |xi|^2.
SpectralField etdrk4_step(const CapillarityModel& model, const SolverConfig& cfg,
                          const SpectralField& z, double dt) {
  if (cfg.linear_only) return free_propagate(z, dt);
  const Grid& g = z.grid();
  const auto& xi2 = g.xi2_table();
  const std::int64_t n = g.size();

  auto N = [&](const SpectralField& w_fourier) {
    return to_fourier(full_nonlinearity_F(model, to_physical(w_fourier), cfg.dealias));
  };

  SpectralField u = to_fourier(z);
  SpectralField N1 = N(u);
  SpectralField a(g, Rep::fourier), b(g, Rep::fourier), c(g, Rep::fourier);
  SpectralField out(g, Rep::fourier);

  // stage a: E2 u + (dt/2) phi1(z/2) N1
  std::vector<cplx> E(n), E2(n), w_half(n), f1(n), f2(n), f3(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const cplx lz{0.0, -dt * xi2[i]};
    const cplx lz2 = 0.5 * lz;
    E[i] = std::exp(lz);
    E2[i] = std::exp(lz2);
    cplx p1, p2, p3;
    phi_functions(lz2, p1, p2, p3);
    w_half[i] = 0.5 * dt * p1;
    phi_functions(lz, p1, p2, p3);
    f1[i] = dt * (p1 - 3.0 * p2 + 4.0 * p3);
    f2[i] = dt * (p2 - 2.0 * p3);
    f3[i] = dt * (4.0 * p3 - p2);
  }
  for (std::int64_t i = 0; i < n; ++i) a[i] = E2[i] * u[i] + w_half[i] * N1[i];
  SpectralField Na = N(a);
  for (std::int64_t i = 0; i < n; ++i) b[i] = E2[i] * u[i] + w_half[i] * Na[i];
  SpectralField Nb = N(b);
  for (std::int64_t i = 0; i < n; ++i)
    c[i] = E2[i] * a[i] + w_half[i] * (2.0 * Nb[i] - N1[i]);
  SpectralField Nc = N(c);
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = E[i] * u[i] + f1[i] * N1[i] + f2[i] * (Na[i] + Nb[i]) * 2.0 + f3[i] * Nc[i];
  return to_physical(out);
}

}  // namespace

SpectralField step_z(const CapillarityModel& model, const SolverConfig& cfg,
                     const SpectralField& z, double dt) {
  switch (cfg.scheme) {
    case Scheme::strang_split_rk4: return strang_step(model, cfg, z, dt);
    case Scheme::etd_rk4: return etdrk4_step(model, cfg, z, dt);
    case Scheme::rk4_pseudospectral:
      throw Error(ErrorCategory::degenerate_input,
                  "rk4_pseudospectral is the primitive-system scheme");
  }
  throw Error(ErrorCategory::internal, "unknown scheme");
}

ZTrajectory evolve_z(const CapillarityModel& model, const SolverConfig& cfg,
                     const SpectralField& z0, double t0, double t1,
                     const std::vector<double>& snapshot_times) {
  ZTrajectory traj;
  const double lo = std::min(t0, t1), hi = std::max(t0, t1);
  std::vector<double> marks{t0};
  for (double t : snapshot_times)
    if (t > lo - 1e-12 && t < hi + 1e-12) marks.push_back(t);
  marks.push_back(t1);
  std::sort(marks.begin(), marks.end());
  if (t1 < t0) std::reverse(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              marks.end());

  SpectralField z = to_physical(z0);
  check_ell_range(model, z);
  double t = t0;
  traj.times.push_back(t0);
  traj.z.push_back(z);

  long step_count = 0;
  for (size_t m = 1; m < marks.size(); ++m) {
    const double seg = marks[m] - t;
    const long nst = std::max<long>(1, static_cast<long>(std::ceil(std::abs(seg) / cfg.dt)));
    const double h0 = seg / static_cast<double>(nst);
    for (long s = 0; s < nst; ++s) {
      double h = h0;
      int rejections = 0;
      for (;;) {
        SpectralField cand = step_z(model, cfg, z, h);
        const bool check_defect =
            cfg.defect_check_interval > 0 && (step_count % cfg.defect_check_interval == 0);
        bool ok = true;
        if (check_defect) {
          SpectralField two = step_z(model, cfg, step_z(model, cfg, z, 0.5 * h), 0.5 * h);
          two -= cand;
          const double defect = l2_norm(two) / std::max(l2_norm(cand), 1e-300);
          traj.max_defect = std::max(traj.max_defect, defect);
          ok = defect <= cfg.defect_tol;
        }
        if (ok) {
          try {
            check_ell_range(model, cand);
          } catch (const Error&) {
            ok = false;
          }
        }
        if (ok) {
          z = std::move(cand);
          break;
        }
        if (++rejections > cfg.max_step_rejections)
          throw Error(ErrorCategory::step_rejection, "step rejection limit exceeded");
        traj.rejected_steps++;
        h *= 0.5;
      }
      // a halved step leaves the segment grid; finish the remainder directly
      if (std::abs(h - h0) > 0) {
        const double done = h;
        SpectralField rest = z;
        double left = h0 - done;
        while (std::abs(left) > 1e-14) {
          const double hh = std::clamp(left, -std::abs(h), std::abs(h));
          rest = step_z(model, cfg, rest, hh);
          left -= hh;
        }
        z = std::move(rest);
      }
      t += h0;
      ++step_count;
    }
    t = marks[m];
    traj.times.push_back(t);
    traj.z.push_back(z);
  }
  return traj;
}

// --- primitive system -------------------------------------------------------

namespace {

// Marching state in Fourier representation: the mass-equation zero mode is
// exactly zero (spectral divergence), so the density mean is never touched
// by the update arithmetic and mass is conserved bit-for-bit.
struct StateF {
  SpectralField rho;
  std::vector<SpectralField> u;
};

StateF to_statef(const FluidState& s) {
  StateF f{to_fourier(s.rho), {}};
  for (const auto& ua : s.u) f.u.push_back(to_fourier(ua));
  return f;
}

FluidState from_statef(const StateF& f) {
  FluidState s{to_physical(f.rho), {}};
  for (const auto& ua : f.u) s.u.push_back(to_physical(ua));
  return s;
}

StateF primitive_rhs(const CapillarityModel& model, const SolverConfig& cfg,
                     const StateF& s) {
  const Grid& g = s.rho.grid();
  const int d = g.dim();
  const SpectralField rho = to_physical(s.rho);
  {
    double lo = 1e300, hi = -1e300;
    for (const auto& v : rho.data()) {
      lo = std::min(lo, v.real());
      hi = std::max(hi, v.real());
    }
    if (lo < model.density_interval().lo || hi > model.density_interval().hi)
      throw Error(ErrorCategory::density_range, "rho left the working interval");
  }
  std::vector<SpectralField> up;
  for (int a = 0; a < d; ++a) up.push_back(to_physical(s.u[a]));

  StateF rhs{SpectralField(g, Rep::fourier), {}};
  for (int a = 0; a < d; ++a) {
    SpectralField flux = up[a];
    for (std::int64_t i = 0; i < flux.size(); ++i) flux[i] *= rho[i].real();
    flux = maybe_dealias(std::move(flux), cfg.dealias);
    rhs.rho -= partial(to_fourier(flux), a);
  }
  rhs.rho[0] = 0.0;  // the divergence has no mean

  // potential part: grad(kappa lap rho + (1/2) kappa' |grad rho|^2 - g(rho))
  SpectralField lap = laplacian(rho);
  std::vector<SpectralField> dr;
  for (int a = 0; a < d; ++a) dr.push_back(to_physical(partial(s.rho, a)));
  SpectralField pot(g, Rep::physical);
  for (std::int64_t i = 0; i < pot.size(); ++i) {
    const double r = rho[i].real();
    double grad2 = 0.0;
    for (int a = 0; a < d; ++a) grad2 += dr[a][i].real() * dr[a][i].real();
    pot[i] = model.kappa(r) * lap[i].real() + 0.5 * model.dkappa(r) * grad2 -
             model.g_of_rho(r);
  }
  pot = maybe_dealias(std::move(pot), cfg.dealias);
  SpectralField poth = to_fourier(pot);

  for (int a = 0; a < d; ++a) {
    SpectralField adv(g, Rep::physical);  // (u . grad) u_a
    for (int b = 0; b < d; ++b) {
      SpectralField dua = to_physical(partial(s.u[a], b));
      for (std::int64_t i = 0; i < adv.size(); ++i)
        adv[i] += up[b][i].real() * dua[i].real();
    }
    adv = maybe_dealias(std::move(adv), cfg.dealias);
    SpectralField comp = to_fourier(adv) * cplx{-1.0, 0.0};
    comp += partial(poth, a);
    rhs.u.push_back(std::move(comp));
  }
  return rhs;
}

StateF axpy(const StateF& s, double w, const StateF& r) {
  StateF out = s;
  out.rho += w * r.rho;
  for (size_t a = 0; a < out.u.size(); ++a) out.u[a] += w * r.u[a];
  return out;
}

StateF rk4_primitive(const CapillarityModel& model, const SolverConfig& cfg, const StateF& s,
                     double dt) {
  StateF k1 = primitive_rhs(model, cfg, s);
  StateF k2 = primitive_rhs(model, cfg, axpy(s, 0.5 * dt, k1));
  StateF k3 = primitive_rhs(model, cfg, axpy(s, 0.5 * dt, k2));
  StateF k4 = primitive_rhs(model, cfg, axpy(s, dt, k3));
  StateF out = s;
  out.rho += (dt / 6.0) * k1.rho;
  out.rho += (dt / 3.0) * k2.rho;
  out.rho += (dt / 3.0) * k3.rho;
  out.rho += (dt / 6.0) * k4.rho;
  for (size_t a = 0; a < out.u.size(); ++a) {
    out.u[a] += (dt / 6.0) * k1.u[a];
    out.u[a] += (dt / 3.0) * k2.u[a];
    out.u[a] += (dt / 3.0) * k3.u[a];
    out.u[a] += (dt / 6.0) * k4.u[a];
  }
  return out;
}

}  // namespace

FluidState step_primitive(const CapillarityModel& model, const SolverConfig& cfg,
                          const FluidState& s, double dt) {
  return from_statef(rk4_primitive(model, cfg, to_statef(s), dt));
}

namespace {
MonitorRow monitor_row(const CapillarityModel& model, const FluidState& s, double t) {
  MonitorRow m;
  m.t = t;
  const SpectralField rho = to_physical(s.rho);
  cplx acc{0.0, 0.0};
  for (const auto& v : rho.data()) acc += (v - 1.0);
  m.mass = acc.real() * s.grid().cell_volume();
  m.hamiltonian = hamiltonian(model, s);
  double lsup = 0.0;
  for (const auto& v : rho.data()) lsup = std::max(lsup, std::abs(model.ell_of_rho(v.real())));
  m.ell_sup = lsup;
  SpectralField divu(s.grid(), Rep::fourier);
  for (int a = 0; a < s.grid().dim(); ++a) divu += to_fourier(partial(s.u[a], a));
  m.divu_sup = sup_norm(divu);
  return m;
}
}  // namespace

PrimitiveTrajectory evolve_primitive(const CapillarityModel& model, const SolverConfig& cfg,
                                     const FluidState& s0, double t0, double t1,
                                     const std::vector<double>& snapshot_times) {
  PrimitiveTrajectory traj;
  const double lo = std::min(t0, t1), hi = std::max(t0, t1);
  std::vector<double> marks{t0};
  for (double t : snapshot_times)
    if (t > lo - 1e-12 && t < hi + 1e-12) marks.push_back(t);
  marks.push_back(t1);
  std::sort(marks.begin(), marks.end());
  if (t1 < t0) std::reverse(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              marks.end());

  StateF s = to_statef(s0);
  double t = t0;
  traj.times.push_back(t);
  traj.states.push_back(from_statef(s));
  traj.monitors.push_back(monitor_row(model, traj.states.back(), t));
  for (size_t m = 1; m < marks.size(); ++m) {
    const double seg = marks[m] - t;
    const long nst = std::max<long>(1, static_cast<long>(std::ceil(std::abs(seg) / cfg.dt)));
    const double h = seg / static_cast<double>(nst);
    for (long i = 0; i < nst; ++i) s = rk4_primitive(model, cfg, s, h);
    t = marks[m];
    traj.times.push_back(t);
    traj.states.push_back(from_statef(s));
    traj.monitors.push_back(monitor_row(model, traj.states.back(), t));
  }
  return traj;
}

double hamiltonian(const CapillarityModel& model, const FluidState& s) {
  const Grid& g = s.grid();
  const SpectralField rho = to_physical(s.rho);
  std::vector<SpectralField> dr;
  for (int a = 0; a < g.dim(); ++a) dr.push_back(to_physical(partial(rho, a)));
  std::vector<SpectralField> up;
  for (int a = 0; a < g.dim(); ++a) up.push_back(to_physical(s.u[a]));
  double acc = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double r = rho[i].real();
    double u2 = 0.0, gr2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      u2 += up[a][i].real() * up[a][i].real();
      gr2 += dr[a][i].real() * dr[a][i].real();
    }
    acc += 0.5 * r * u2 + model.bulk_energy(r) + 0.5 * model.kappa(r) * gr2;
  }
  return acc * g.cell_volume();
}

double stability_dt(const CapillarityModel& model, const Grid& grid, Scheme scheme,
                    double safety) {
  const double xi2max = grid.xi_max_corner() * grid.xi_max_corner();
  const double rk4_imag = 2.0 * std::sqrt(2.0);
  if (scheme == Scheme::rk4_pseudospectral) {
    const double a_max = std::max(model.a(model.density_interval().lo),
                                  model.a(model.density_interval().hi));
    return safety * rk4_imag / (a_max * xi2max);
  }
  const double at_max = std::max(std::abs(model.atilde(model.ell_lo())),
                                 std::abs(model.atilde(model.ell_hi())));
  return safety * rk4_imag / (std::max(at_max, 0.25) * xi2max);
}

}  // namespace ek
