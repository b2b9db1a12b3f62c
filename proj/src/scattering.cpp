#include "ek/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ek/errors.hpp"
#include "ek/field_io.hpp"
#include "ek/spectral.hpp"

namespace ek {

namespace {

double smooth_step01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_q.
void gauss_legendre(int q, std::vector<double>& x, std::vector<double>& w) {
  x.resize(q);
  w.resize(q);
  for (int i = 0; i < q; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

SpectralField centered_spectrum_to_field(const Grid& g, const std::vector<cplx>& coeff) {
  SpectralField f(g, Rep::fourier, std::vector<cplx>(coeff));
  // shift to the box center: multiply by e^{-i xi . c}
  const int d = g.dim();
  int idx[3];
  for (std::int64_t i = 0; i < f.size(); ++i) {
    g.unravel(i, idx);
    double ph = 0.0;
    for (int a = 0; a < d; ++a) ph -= g.wavenumber(a, idx[a]) * 0.5 * g.box()[a];
    f[i] *= cplx{std::cos(ph), std::sin(ph)};
  }
  return real_part(to_physical(f));
}

}  // namespace

Profile make_profile(const Grid& grid, const ProfileSpec& spec, double s_reg,
                     double smallness_threshold) {
  SpectralField field(grid, Rep::physical);
  if (spec.generator == ProfileGenerator::user_snapshot) {
    field = real_part(to_physical(load_field(spec.snapshot_path)));
    if (std::abs(mean(field)) > 1e-12 * (1.0 + sup_norm(field))) {
      const cplx mu = mean(field);
      for (auto& v : field.data()) v -= mu;  // enforce the mean-zero admissibility
    }
  } else {
    std::vector<cplx> coeff(grid.size(), cplx{0.0, 0.0});
    const auto& xi2 = grid.xi2_table();
    const double ximax = grid.xi_max_axis();
    int idx[3];
    for (std::int64_t i = 0; i < grid.size(); ++i) {
      grid.unravel(i, idx);
      const double r = std::sqrt(xi2[i]);
      if (r == 0.0) continue;
      const double xi1 = grid.wavenumber(0, idx[0]);
      double env;
      if (spec.generator == ProfileGenerator::gaussian_dipole) {
        const double w = 1.0 - smooth_step01((r - spec.window_lo * ximax) /
                                             ((spec.window_hi - spec.window_lo) * ximax));
        env = std::exp(-0.5 * spec.width * spec.width * xi2[i]) * w;
      } else {
        const double gauss =
            std::exp(-0.5 * std::pow((r - spec.ring_radius) / spec.ring_width, 2.0));
        const double w =
            0.5 * std::erfc((r - spec.roll_center) / (std::numbers::sqrt2 * spec.roll_width));
        env = gauss * w;
      }
      coeff[i] = cplx{0.0, xi1 * env};
    }
    field = centered_spectrum_to_field(grid, coeff);
  }
  const double s = sup_norm(field);
  if (s > 0.0) field *= cplx{spec.amplitude / s, 0.0};
  Profile p{field, {}};
  p.norms = profile_norms(p.field, s_reg, smallness_threshold);
  return p;
}

std::vector<double> sample_times(const ExperimentPlan& plan, double Tn, double tstar) {
  if (Tn < 1.0) throw Error(ErrorCategory::degenerate_input, "T_n must be >= 1");
  const double hi = std::min(Tn, tstar);
  std::vector<double> out;
  for (double t = plan.t_lo; t <= hi + 1e-9; t += plan.sample_cadence) out.push_back(t);
  return out;
}

std::pair<double, double> fit_window(double Tn, double tstar) {
  return {2.0, 0.5 * std::min(Tn, tstar)};
}

DecayFitResult decay_fit(const std::vector<double>& t, const std::vector<double>& value,
                         double window_lo, double window_hi) {
  if (t.size() != value.size())
    throw Error(ErrorCategory::degenerate_input, "decay series length mismatch");
  std::vector<double> lt, lv;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window_lo - 1e-12 || t[i] > window_hi + 1e-12) continue;
    if (!(value[i] > 0.0))
      throw Error(ErrorCategory::degenerate_input, "decay fit needs positive samples");
    lt.push_back(std::log(t[i]));
    lv.push_back(std::log(value[i]));
  }
  if (lt.size() < 5)
    throw Error(ErrorCategory::insufficient_samples, "decay fit needs >= 5 samples in window");
  const size_t n = lt.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += lt[i];
    sy += lv[i];
    sxx += lt[i] * lt[i];
    sxy += lt[i] * lv[i];
  }
  DecayFitResult r;
  const double det = n * sxx - sx * sx;
  r.slope = (n * sxy - sx * sy) / det;
  r.intercept = (sy - r.slope * sx) / n;
  double rss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double e = lv[i] - (r.slope * lt[i] + r.intercept);
    rss += e * e;
  }
  r.residual = std::sqrt(rss / n);
  r.samples = static_cast<int>(n);
  return r;
}

SpectralField linear_profile_z1(const Profile& phi, double t) {
  return free_propagate(phi.field, t);
}

namespace {

// Marches an accumulated Duhamel integral from T_n down (or up) through the
// requested times; `integrand` maps z1(s) to the integrand field.
template <class Integrand>
std::vector<SpectralField> duhamel_series(const Profile& phi, double Tn,
                                          const std::vector<double>& times,
                                          const ExperimentPlan& plan, int nodes,
                                          Integrand&& integrand) {
  const Grid& g = phi.field.grid();
  const SpectralField phih = to_fourier(phi.field);
  std::vector<double> xs, ws;
  gauss_legendre(nodes, xs, ws);

  std::vector<size_t> order(times.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return times[a] > times[b]; });

  std::vector<SpectralField> out(times.size(), SpectralField(g, Rep::physical));
  SpectralField acc(g, Rep::fourier);
  double tprev = Tn;
  for (size_t oi : order) {
    const double t = times[oi];
    if (t > Tn + 1e-12)
      throw Error(ErrorCategory::degenerate_input, "sample time beyond T_n");
    acc = free_propagate(acc, t - tprev);
    const int npan = std::max(1, static_cast<int>(std::ceil(std::abs(tprev - t) / plan.quad_panel)));
    for (int p = 0; p < npan; ++p) {
      const double a = tprev + (t - tprev) * p / npan;
      const double b = tprev + (t - tprev) * (p + 1) / npan;
      for (int q = 0; q < nodes; ++q) {
        const double s = 0.5 * (a + b) + 0.5 * (b - a) * xs[q];
        const double wq = 0.5 * (b - a) * ws[q];
        SpectralField z1s = to_physical(free_propagate(phih, s));
        SpectralField f = to_fourier(integrand(z1s));
        acc += cplx{wq, 0.0} * free_propagate(f, t - s);
      }
    }
    out[oi] = to_physical(acc);
    tprev = t;
  }
  return out;
}

}  // namespace

SpectralField duhamel_z2(const CapillarityModel& model, const Profile& phi, double Tn,
                         double t, const ExperimentPlan& plan, bool check_convergence) {
  auto integ = [&](const SpectralField& z1s) {
    return full_nonlinearity_F(model, z1s, true);
  };
  std::vector<double> times{t};
  SpectralField base = duhamel_series(phi, Tn, times, plan, plan.quad_nodes, integ)[0];
  if (check_convergence) {
    SpectralField fine = duhamel_series(phi, Tn, times, plan, 2 * plan.quad_nodes, integ)[0];
    SpectralField d = fine - base;
    const double ref = std::max(l2_norm(fine), 1e-300);
    if (l2_norm(d) > plan.quad_tol * ref)
      throw Error(ErrorCategory::quadrature_not_converged,
                  "Duhamel node-doubling test failed");
    return fine;
  }
  return base;
}

std::vector<SpectralField> z2_series(const CapillarityModel& model, const Profile& phi,
                                     double Tn, const std::vector<double>& times,
                                     const ExperimentPlan& plan) {
  return duhamel_series(phi, Tn, times, plan, plan.quad_nodes,
                        [&](const SpectralField& z1s) {
                          return full_nonlinearity_F(model, z1s, true);
                        });
}

namespace {
SpectralField z22_integrand(const CapillarityModel& model, const SpectralField& z1s) {
  const Grid& g = z1s.grid();
  const double ca = model.c_a(), cg = model.c_g();
  SpectralField zh = to_fourier(z1s);
  SpectralField w(g, Rep::physical);
  for (int a = 0; a < g.dim(); ++a) {
    SpectralField da = to_physical(partial(zh, a));
    for (std::int64_t i = 0; i < w.size(); ++i)
      w[i] += cplx{ca * std::norm(da[i]), 0.0};
  }
  for (std::int64_t i = 0; i < w.size(); ++i)
    w[i] += cplx{cg * std::norm(z1s[i]), 0.0};
  return dealias(w);
}
}  // namespace

SpectralField z22_part(const CapillarityModel& model, const Profile& phi, double Tn,
                       double t, const ExperimentPlan& plan) {
  std::vector<double> times{t};
  auto integ = [&](const SpectralField& z1s) {
    return cplx{0.0, -0.5} * z22_integrand(model, z1s);
  };
  return duhamel_series(phi, Tn, times, plan, plan.quad_nodes, integ)[0];
}

SpectralField re_z22_identity_path(const CapillarityModel& model, const Profile& phi,
                                   double Tn, double t, const ExperimentPlan& plan) {
  // (1/2) Im of int (e^{i(t-s)Lap} - 1) w ds with the subtraction done inside
  // each node, in physical space. The subtracted constant term integrates to
  // a real field, so only its vanishing imaginary part is discarded; the
  // propagated route and this one follow different arithmetic.
  const Grid& g = phi.field.grid();
  std::vector<double> xs, ws;
  gauss_legendre(plan.quad_nodes, xs, ws);
  SpectralField acc(g, Rep::physical);
  const int npan = std::max(1, static_cast<int>(std::ceil(std::abs(Tn - t) / plan.quad_panel)));
  const SpectralField phih = to_fourier(phi.field);
  for (int p = 0; p < npan; ++p) {
    const double a = Tn + (t - Tn) * p / npan;
    const double b = Tn + (t - Tn) * (p + 1) / npan;
    for (int q = 0; q < plan.quad_nodes; ++q) {
      const double s = 0.5 * (a + b) + 0.5 * (b - a) * xs[q];
      const double wq = 0.5 * (b - a) * ws[q];
      SpectralField z1s = to_physical(free_propagate(phih, s));
      SpectralField w = z22_integrand(model, z1s);
      SpectralField moved = to_physical(free_propagate(w, t - s));
      moved -= to_physical(std::move(w));
      acc += cplx{wq, 0.0} * moved;
    }
  }
  SpectralField out = imag_part(acc);
  out *= cplx{0.5, 0.0};
  return out;
}

ZTrajectory final_data_solve(const CapillarityModel& model, const SolverConfig& cfg,
                             const Profile& phi, double Tn, const ExperimentPlan& plan,
                             FinalDataDiagnostics* diag) {
  if (!phi.norms.admissible)
    throw Error(ErrorCategory::degenerate_input,
                "profile is not admissible (mean or smallness)");
  const double tstar = phi.norms.wrap_horizon;
  std::vector<double> marks = sample_times(plan, Tn, tstar);
  SpectralField zT = to_physical(free_propagate(phi.field, Tn));
  ZTrajectory traj;
  FinalDataDiagnostics d;
  d.tstar = tstar;
  try {
    traj = evolve_z(model, cfg, zT, Tn, plan.t_lo, marks);
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::density_range ||
        e.category() == ErrorCategory::step_rejection) {
      d.blowup_flag = true;
      d.note = e.what();
      if (diag) *diag = d;
    }
    throw;
  }
  if (diag) *diag = d;
  return traj;
}

BootstrapResult bootstrap_Z(const CapillarityModel& model, const ZTrajectory& traj,
                            const Profile& phi, double Tn, const ExperimentPlan& plan) {
  std::vector<SpectralField> z2 = z2_series(model, phi, Tn, traj.times, plan);
  BootstrapResult out;
  out.series.wrap_horizon = phi.norms.wrap_horizon;
  const auto [wlo, whi] = fit_window(Tn, phi.norms.wrap_horizon);
  out.series.window_lo = wlo;
  out.series.window_hi = whi;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    SpectralField zt = traj.z[i] - to_physical(linear_profile_z1(phi, t));
    zt -= z2[i];
    const double v = std::pow(t, 1.5) * sobolev_norm(zt, plan.s_reg + 1.0);
    out.series.t.push_back(t);
    out.series.value.push_back(v);
    out.Z = std::max(out.Z, v);
  }
  return out;
}

std::vector<SpectralField> vector_field_J(const SpectralField& f, double t,
                                          bool* wrap_warning) {
  const Grid& g = f.grid();
  const SpectralField back = to_physical(free_propagate(f, -t));
  if (wrap_warning) {
    // boundary tails above 1e-6 make the sawtooth x-weight dishonest
    const double s = sup_norm(back);
    double face = 0.0;
    int idx[3];
    for (std::int64_t i = 0; i < back.size(); ++i) {
      g.unravel(i, idx);
      for (int a = 0; a < g.dim(); ++a)
        if (idx[a] == 0) face = std::max(face, std::abs(back[i]));
    }
    *wrap_warning = s > 0 && face / s > 1e-6;
  }
  std::vector<SpectralField> out;
  int idx[3];
  for (int a = 0; a < g.dim(); ++a) {
    SpectralField xa = back;
    for (std::int64_t i = 0; i < xa.size(); ++i) {
      g.unravel(i, idx);
      xa[i] *= idx[a] * g.spacing(a) - 0.5 * g.box()[a];
    }
    out.push_back(to_physical(free_propagate(xa, t)));
  }
  return out;
}

double vector_field_identity_constant(const Profile& phi, double t) {
  const Grid& g = phi.field.grid();
  SpectralField f = to_physical(free_propagate(phi.field, t));
  std::vector<SpectralField> Jf = vector_field_J(f, t);

  // A = grad(conj(f) f); B = (1/(it))(conj(f) Jf - f conj(Jf))
  SpectralField ff(g, Rep::physical);
  for (std::int64_t i = 0; i < ff.size(); ++i) ff[i] = std::norm(f[i]);
  cplx num{0.0, 0.0};
  double den = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    SpectralField A = to_physical(partial(ff, a));
    SpectralField B(g, Rep::physical);
    const cplx inv_it = 1.0 / cplx{0.0, t};
    for (std::int64_t i = 0; i < B.size(); ++i)
      B[i] = inv_it * (std::conj(f[i]) * Jf[a][i] - f[i] * std::conj(Jf[a][i]));
    for (std::int64_t i = 0; i < B.size(); ++i) {
      num += B[i] * std::conj(A[i]);
      den += std::norm(A[i]);
    }
  }
  return (num / den).real();
}

ScatteringErrorSeries scattering_error(const CapillarityModel& model, const ZTrajectory& traj,
                                       const Profile& phi, double Tn,
                                       const ExperimentPlan&) {
  ScatteringErrorSeries out;
  const double tstar = phi.norms.wrap_horizon;
  const auto [wlo, whi] = fit_window(Tn, tstar);
  const double delta = model.delta();
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    FluidState st = from_complex(model, MadelungState{traj.z[i]});
    SpectralField z1 = to_physical(linear_profile_z1(phi, t));

    SpectralField rho_err = st.rho;
    for (std::int64_t k = 0; k < rho_err.size(); ++k)
      rho_err[k] = st.rho[k].real() - 1.0 - delta * z1[k].real();
    out.rho_err.t.push_back(t);
    out.rho_err.value.push_back(l2_norm(rho_err));

    double acc = 0.0;
    for (int a = 0; a < phi.field.grid().dim(); ++a) {
      SpectralField ua = st.u[a];
      SpectralField d1 = to_physical(partial(z1, a));
      for (std::int64_t k = 0; k < ua.size(); ++k)
        ua[k] = st.u[a][k].real() - d1[k].imag();
      const double n = l2_norm(ua);
      acc += n * n;
    }
    out.u_err.t.push_back(t);
    out.u_err.value.push_back(std::sqrt(acc));
  }
  for (DecaySeries* s : {&out.rho_err, &out.u_err}) {
    s->window_lo = wlo;
    s->window_hi = whi;
    s->wrap_horizon = tstar;
    s->fit = decay_fit(s->t, s->value, wlo, whi);
  }
  return out;
}

}  // namespace ek
