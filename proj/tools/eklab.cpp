// Batch driver for the Euler-Korteweg scattering laboratory.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

#include "ek/energy_monitor.hpp"
#include "ek/errors.hpp"
#include "ek/field_io.hpp"
#include "ek/littlewood_paley.hpp"
#include "ek/random_fields.hpp"
#include "ek/report.hpp"
#include "ek/resonance.hpp"
#include "ek/spectral.hpp"
#include "ek/version.hpp"

namespace fs = std::filesystem;
using namespace ek;

namespace {

int error_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::degenerate_input: return 2;
    case ErrorCategory::density_range: return 3;
    case ErrorCategory::non_irrotational: return 4;
    case ErrorCategory::quadrature_not_converged: return 5;
    case ErrorCategory::insufficient_samples: return 6;
    case ErrorCategory::step_rejection: return 7;
    case ErrorCategory::config_parse: return 8;
    case ErrorCategory::io: return 9;
    case ErrorCategory::internal: return 10;
  }
  return 1;
}

struct Ctx {
  ExperimentConfig cfg;
  fs::path out;
};

Ctx make_ctx(const std::string& config_path, const std::string& out_override,
             long seed_override) {
  Ctx c;
  if (!config_path.empty()) c.cfg = ExperimentConfig::from_file(config_path);
  if (seed_override >= 0) c.cfg.rng_seed = static_cast<std::uint64_t>(seed_override);
  if (!out_override.empty()) c.cfg.out_dir = out_override;
  c.out = c.cfg.out_dir;
  fs::create_directories(c.out);
  return c;
}

void finish(const Ctx& c, json& rep, const std::string& name) {
  if (c.cfg.write_json) write_json_file(rep, (c.out / (name + "-report.json")).string());
  std::cout << name << ": report written to " << (c.out / (name + "-report.json")).string()
            << "\n";
}

DecaySeries fitted_series(std::vector<double> t, std::vector<double> v, double lo, double hi,
                          double tstar) {
  DecaySeries s;
  s.t = std::move(t);
  s.value = std::move(v);
  s.window_lo = lo;
  s.window_hi = hi;
  s.wrap_horizon = tstar;
  s.fit = decay_fit(s.t, s.value, lo, hi);
  return s;
}

int cmd_simulate(const Ctx& c) {
  const Grid g = c.cfg.make_grid();
  const CapillarityModel mdl = c.cfg.make_model();
  Profile phi = make_profile(g, c.cfg.profile, c.cfg.plan.s_reg, c.cfg.plan.epsilon0_threshold);
  json rep = report_header(c.cfg, "simulate");
  rep["profile_norms"] = norms_to_json(phi.norms);

  std::vector<double> marks;
  for (double t = 0.0; t <= c.cfg.duration + 1e-12; t += c.cfg.plan.sample_cadence)
    marks.push_back(t);

  if (c.cfg.solver.scheme == Scheme::rk4_pseudospectral) {
    FluidState s0 = from_complex(mdl, MadelungState{phi.field});
    PrimitiveTrajectory traj =
        evolve_primitive(mdl, c.cfg.solver, s0, 0.0, c.cfg.duration, marks);
    if (c.cfg.write_csv)
      write_monitor_csv((c.out / "simulate-monitors.csv").string(), traj.monitors);
    EnergyReport er = blowup_monitor(mdl, traj, 0.5 * c.cfg.plan.s_reg);
    rep["continuation_ok"] = er.continuation_ok;
    rep["blowup_integral"] = er.blowup_integral.back();
    rep["mass_drift"] =
        std::abs(traj.monitors.back().mass - traj.monitors.front().mass);
    rep["hamiltonian_drift_rel"] =
        std::abs(traj.monitors.back().hamiltonian - traj.monitors.front().hamiltonian) /
        std::max(1e-300, std::abs(traj.monitors.front().hamiltonian));
    if (c.cfg.field_snapshot_cadence > 0)
      for (size_t i = 0; i < traj.states.size();
           i += static_cast<size_t>(c.cfg.field_snapshot_cadence))
        save_field(traj.states[i].rho,
                   (c.out / ("rho-" + std::to_string(traj.times[i]) + ".field")).string(),
                   traj.times[i]);
  } else {
    ZTrajectory traj = evolve_z(mdl, c.cfg.solver, phi.field, 0.0, c.cfg.duration, marks);
    EnergyReport er = blowup_monitor_z(mdl, traj, 0.5 * c.cfg.plan.s_reg);
    rep["continuation_ok"] = er.continuation_ok;
    rep["blowup_integral"] = er.blowup_integral.back();
    rep["rejected_steps"] = traj.rejected_steps;
    if (c.cfg.write_csv) {
      std::vector<MonitorRow> rows;
      for (size_t i = 0; i < traj.times.size(); ++i) {
        FluidState st = from_complex(mdl, MadelungState{traj.z[i]});
        MonitorRow r;
        r.t = traj.times[i];
        const cplx mu = mean(st.rho);
        r.mass = (mu.real() - 1.0) * st.grid().volume();
        r.hamiltonian = hamiltonian(mdl, st);
        r.ell_sup = sup_norm(real_part(traj.z[i]));
        SpectralField divu(st.grid(), Rep::fourier);
        for (int a = 0; a < st.grid().dim(); ++a) divu += to_fourier(partial(st.u[a], a));
        r.divu_sup = sup_norm(divu);
        rows.push_back(r);
      }
      write_monitor_csv((c.out / "simulate-monitors.csv").string(), rows);
    }
    if (c.cfg.field_snapshot_cadence > 0)
      for (size_t i = 0; i < traj.z.size();
           i += static_cast<size_t>(c.cfg.field_snapshot_cadence))
        save_field(traj.z[i],
                   (c.out / ("z-" + std::to_string(traj.times[i]) + ".field")).string(),
                   traj.times[i]);
  }
  json r = rep;
  finish(c, r, "simulate");
  return 0;
}

int cmd_scatter(const Ctx& c) {
  const Grid g = c.cfg.make_grid();
  const CapillarityModel mdl = c.cfg.make_model();
  Profile phi = make_profile(g, c.cfg.profile, c.cfg.plan.s_reg, c.cfg.plan.epsilon0_threshold);
  json rep = report_header(c.cfg, "scatter");
  rep["model"] = mdl.describe();
  rep["profile_norms"] = norms_to_json(phi.norms);
  rep["runs"] = json::array();

  for (double Tn : c.cfg.plan.T_n) {
    json run;
    run["T_n"] = Tn;
    FinalDataDiagnostics diag;
    ZTrajectory traj = final_data_solve(mdl, c.cfg.solver, phi, Tn, c.cfg.plan, &diag);
    run["tstar"] = diag.tstar;
    run["rejected_steps"] = traj.rejected_steps;

    ScatteringErrorSeries err = scattering_error(mdl, traj, phi, Tn, c.cfg.plan);
    BootstrapResult boot = bootstrap_Z(mdl, traj, phi, Tn, c.cfg.plan);
    EnergyReport er = blowup_monitor_z(mdl, traj, 0.5 * c.cfg.plan.s_reg);

    run["rho_error"] = series_to_json(err.rho_err);
    run["u_error"] = series_to_json(err.u_err);
    run["bootstrap_series"] = series_to_json(boot.series);
    run["Z"] = boot.Z;
    run["continuation_ok"] = er.continuation_ok;
    run["blowup_integral"] = er.blowup_integral.back();
    rep["runs"].push_back(run);

    if (c.cfg.write_csv) {
      const std::string tag = "T" + std::to_string(static_cast<int>(Tn));
      write_series_csv((c.out / ("scatter-" + tag + "-rho_err.csv")).string(), err.rho_err);
      write_series_csv((c.out / ("scatter-" + tag + "-u_err.csv")).string(), err.u_err);
      write_series_csv((c.out / ("scatter-" + tag + "-bootstrap.csv")).string(), boot.series);
    }
    if (c.cfg.field_snapshot_cadence > 0)
      for (size_t i = 0; i < traj.z.size();
           i += static_cast<size_t>(c.cfg.field_snapshot_cadence)) {
        const std::string tag = "T" + std::to_string(static_cast<int>(Tn));
        save_field(traj.z[i],
                   (c.out / ("scatter-" + tag + "-z-" + std::to_string(traj.times[i]) + ".field"))
                       .string(),
                   traj.times[i]);
      }
  }
  finish(c, rep, "scatter");
  return 0;
}

int cmd_second_approx(const Ctx& c) {
  const Grid g = c.cfg.make_grid();
  const CapillarityModel mdl = c.cfg.make_model();
  Profile phi = make_profile(g, c.cfg.profile, c.cfg.plan.s_reg, c.cfg.plan.epsilon0_threshold);
  const double Tn = c.cfg.plan.T_n.front();
  const double tstar = phi.norms.wrap_horizon;
  json rep = report_header(c.cfg, "second-approx");
  rep["T_n"] = Tn;
  rep["profile_norms"] = norms_to_json(phi.norms);

  std::vector<double> times = sample_times(c.cfg.plan, Tn, tstar);
  auto series = z2_series(mdl, phi, Tn, times, c.cfg.plan);
  std::vector<double> rez2, comp;
  for (size_t i = 0; i < times.size(); ++i) {
    const double v = l2_norm(real_part(series[i]));
    rez2.push_back(v);
    comp.push_back(std::pow(times[i], 1.5) * v);
  }
  const auto [wlo, whi] = fit_window(Tn, tstar);
  DecaySeries s = fitted_series(times, rez2, wlo, whi, tstar);
  rep["re_z2"] = series_to_json(s);
  double cmax = 0.0, cmin = 1e300;
  for (size_t i = 0; i < times.size(); ++i)
    if (times[i] >= wlo - 1e-9 && times[i] <= whi + 1e-9) {
      cmax = std::max(cmax, comp[i]);
      cmin = std::min(cmin, comp[i]);
    }
  rep["compensated_max_over_min"] = cmax / cmin;

  // identity checks at the window midpoint
  const double tmid = 0.5 * (wlo + whi);
  SpectralField a = real_part(z22_part(mdl, phi, Tn, tmid, c.cfg.plan));
  SpectralField b = re_z22_identity_path(mdl, phi, Tn, tmid, c.cfg.plan);
  SpectralField d = a - b;
  rep["re_z22_two_path_residual"] = l2_norm(d);
  bool converged = true;
  try {
    (void)duhamel_z2(mdl, phi, Tn, tmid, c.cfg.plan, true);
  } catch (const Error&) {
    converged = false;
  }
  rep["quadrature_converged"] = converged;
  if (c.cfg.write_csv) write_series_csv((c.out / "second-approx-re_z2.csv").string(), s);
  finish(c, rep, "second-approx");
  return converged ? 0 : error_code(ErrorCategory::quadrature_not_converged);
}

int cmd_verify_dispersive(const Ctx& c) {
  const Grid g = c.cfg.make_grid();
  Profile phi = make_profile(g, c.cfg.profile, c.cfg.plan.s_reg, c.cfg.plan.epsilon0_threshold);
  const double tstar = phi.norms.wrap_horizon;
  json rep = report_header(c.cfg, "verify-dispersive");
  rep["profile_norms"] = norms_to_json(phi.norms);

  std::vector<double> times, sup;
  for (double t = 1.0; t <= tstar / 2 + 1e-9; t += c.cfg.plan.sample_cadence) {
    times.push_back(t);
    sup.push_back(sup_norm(linear_profile_z1(phi, t)));
  }
  DecaySeries s = fitted_series(times, sup, 1.0, tstar / 2, tstar);
  rep["sup_norm_decay"] = series_to_json(s);
  // dispersive-quotient table: ||e^{itL}phi||_p / (t^{3/p-3/2} ||phi||_{p'})
  json quot = json::array();
  for (double p : {4.0, std::numeric_limits<double>::infinity()}) {
    const double pp = std::isinf(p) ? 1.0 : p / (p - 1.0);
    const double base = lebesgue_norm(phi.field, pp);
    json row;
    row["p"] = std::isinf(p) ? -1.0 : p;
    json vals = json::array();
    for (double t : times) {
      const double lhs = lebesgue_norm(linear_profile_z1(phi, t), p);
      vals.push_back(lhs / (std::pow(t, 3.0 / p - 1.5) * base));
    }
    row["quotient"] = vals;
    quot.push_back(row);
  }
  rep["dispersive_quotients"] = quot;
  if (c.cfg.write_csv) write_series_csv((c.out / "dispersive-sup.csv").string(), s);
  finish(c, rep, "verify-dispersive");
  return 0;
}

int cmd_verify_besov(const Ctx& c) {
  const Grid g = c.cfg.make_grid();
  json rep = report_header(c.cfg, "verify-besov");
  DyadicCutoffs cut(g);
  rep["partition_residual"] = cut.partition_residual();

  FieldRng rng(c.cfg.rng_seed);
  SpectralField f = to_physical(rng.complex_field(g, 0.0, 0.05, false));
  SpectralField h = to_physical(rng.complex_field(g, 0.0, 0.05, false));
  BonyParts parts = bony_decompose(f, h);
  SpectralField sum = parts.para_fg + parts.remainder + parts.para_gf;
  sum -= pointwise_multiply(f, h);
  rep["bony_residual_rel"] = l2_norm(sum) / l2_norm(pointwise_multiply(f, h));

  json bern = json::array();
  const int jmid = (cut.j_min() + cut.j_max()) / 2;
  for (int j = jmid - 1; j <= jmid + 1; ++j) {
    SpectralField blk = dyadic_block(f, j);
    if (l2_norm(blk) < 1e-14) continue;
    BernsteinReport r = bernstein_check(blk, j, 2.0, std::numeric_limits<double>::infinity());
    json row;
    row["j"] = j;
    row["embedding_ratio"] = r.embedding_ratio;
    row["derivative_ratio"] = r.derivative_ratio;
    bern.push_back(row);
  }
  rep["bernstein"] = bern;
  if (c.cfg.write_csv) {
    std::ofstream csv((c.out / "bernstein.csv").string());
    csv << "j,embedding_ratio,embedding_bound,derivative_ratio,derivative_lo,derivative_hi\n";
    for (const auto& row : bern)
      csv << row["j"].get<int>() << ',' << csv_num(row["embedding_ratio"].get<double>())
          << ",10," << csv_num(row["derivative_ratio"].get<double>()) << ",0.75,"
          << csv_num(8.0 / 3.0) << '\n';
  }
  const bool ok = cut.partition_residual() < 1e-10 &&
                  rep["bony_residual_rel"].get<double>() < 1e-10;
  rep["pass"] = ok;
  finish(c, rep, "verify-besov");
  return ok ? 0 : 1;
}

int cmd_gauge(const Ctx& c) {
  json rep = report_header(c.cfg, "gauge");
  std::ofstream csv((c.out / "gauge.csv").string());
  csv << "family,rho,gamma,phi,ode_residual\n";
  double worst = 0.0;
  for (const auto& [name, mdl] :
       {std::pair{std::string("quantum"), CapillarityModel::quantum()},
        std::pair{std::string("constant"), CapillarityModel::constant()},
        std::pair{std::string("power_m1"), CapillarityModel::power(1.0, 1.0)}}) {
    for (double gamma : {0.0, 1.0, 2.0, 3.75})
      for (double rho = 0.5; rho <= 2.0 + 1e-12; rho += 0.05) {
        const double phi = mdl.gauge_phi(rho, gamma);
        const double res = std::abs(mdl.gauge_ode_residual(rho, gamma));
        worst = std::max(worst, res);
        csv << name << ',' << csv_num(rho) << ',' << csv_num(gamma) << ',' << csv_num(phi)
            << ',' << csv_num(res) << '\n';
      }
  }
  rep["max_ode_residual"] = worst;
  rep["pass"] = worst <= 1e-10;
  finish(c, rep, "gauge");
  return worst <= 1e-10 ? 0 : 1;
}

int cmd_resonance_map(const Ctx& c) {
  json rep = report_header(c.cfg, "resonance-map");
  const Vec3 xi{1.0, 0.0, 0.0};
  int k = 0;
  for (const auto& [s1, s2] : {std::pair{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}) {
    auto rows = resonance_map({s1, s2}, xi, 2.0, 81, 1e-3);
    const std::string name =
        "resonance-" + std::string(s1 > 0 ? "p" : "m") + std::string(s2 > 0 ? "p" : "m") + ".csv";
    write_resonance_csv((c.out / name).string(), rows);
    ++k;
  }
  rep["sections"] = k;
  finish(c, rep, "resonance-map");
  return 0;
}

int cmd_selftest(const Ctx& c) {
  // condensed invariant sweep on a small grid; each line mirrors a module suite
  json rep = report_header(c.cfg, "selftest");
  Grid g = Grid::cube(3, 16, 16.0);
  FieldRng rng(c.cfg.rng_seed);
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    rep["checks"][name] = ok;
    if (!ok) ++failures;
  };

  SpectralField f = to_physical(rng.complex_field(g, 0.0, 0.05, false));
  check("parseval", std::abs(l2_norm(f) - l2_norm(to_fourier(f))) < 1e-12 * l2_norm(f));
  {
    SpectralField d = free_propagate(free_propagate(f, 0.3), 0.45);
    d -= free_propagate(f, 0.75);
    check("propagator_group_law", l2_norm(d) < 1e-12 * l2_norm(f));
  }
  check("partition_of_unity", DyadicCutoffs(g).partition_residual() < 1e-10);
  {
    SpectralField h = to_physical(rng.complex_field(g, 0.0, 0.05, false));
    BonyParts parts = bony_decompose(f, h);
    SpectralField sum = parts.para_fg + parts.remainder + parts.para_gf;
    sum -= pointwise_multiply(f, h);
    check("bony_reconstruction", l2_norm(sum) < 1e-10 * l2_norm(pointwise_multiply(f, h)));
  }
  {
    auto mdl = CapillarityModel::constant();
    bool ok = true;
    for (double rho = 0.25; rho <= 4.5; rho += 0.25)
      ok = ok && std::abs(mdl.rho_of_ell(mdl.ell_of_rho(rho)) - rho) < 1e-10;
    check("variable_change_roundtrip", ok);
    double res = 0.0;
    for (double gamma : {0.0, 1.0, 2.0, 3.75})
      for (double rho = 0.5; rho <= 2.0; rho += 0.1)
        res = std::max(res, std::abs(mdl.gauge_ode_residual(rho, gamma)));
    check("gauge_ode_residual", res < 1e-10);
  }
  {
    auto syn = CapillarityModel::synthetic(1.0, 1.0);
    SpectralField z = to_physical(rng.complex_field(g, 2.0, 0.3, false));
    z *= cplx{0.3 / sup_norm(z), 0.0};
    SpectralField d = quadratic_part_N2(syn, z, false);
    d -= quadratic_part_real_form(syn, z, false);
    check("n2_dual_form", sup_norm(d) < 1e-12);
  }
  {
    auto mdl = CapillarityModel::quantum();
    SpectralField z = to_physical(rng.complex_field(g, 2.0, 0.3, false));
    z *= cplx{1e-2 / sup_norm(z), 0.0};
    FluidState st = from_complex(mdl, MadelungState{z});
    MadelungState back = to_complex(mdl, st);
    SpectralField d = back.z - z;
    check("madelung_roundtrip", l2_norm(d) < 1e-10 * std::max(1e-30, l2_norm(z)));
    check("curl_free", curl_diagnostic(st.u) < 1e-12);
  }
  {
    const auto cls = classify({-1, -1}, {1, 0, 0}, {0.5, 0, 0}, 1e-10);
    check("resonance_space_point", cls == ResonanceClass::space_resonant);
  }
  rep["failures"] = failures;
  finish(c, rep, "selftest");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Korteweg pseudospectral scattering laboratory"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string config_path, out_override;
  long seed_override = -1;
  int threads = 1;
  app.add_option("--config", config_path, "experiment configuration file");
  app.add_option("--seed", seed_override, "override rng_seed");
  app.add_option("--out", out_override, "override output directory");
  app.add_option("--threads", threads, "worker threads for independent runs");

  std::string sub;
  app.add_option("subcommand", sub,
                 "simulate | scatter | second-approx | verify-dispersive | verify-besov | "
                 "gauge | resonance-map | selftest")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Ctx c = make_ctx(config_path, out_override, seed_override);
    if (sub == "simulate") return cmd_simulate(c);
    if (sub == "scatter") return cmd_scatter(c);
    if (sub == "second-approx") return cmd_second_approx(c);
    if (sub == "verify-dispersive") return cmd_verify_dispersive(c);
    if (sub == "verify-besov") return cmd_verify_besov(c);
    if (sub == "gauge") return cmd_gauge(c);
    if (sub == "resonance-map") return cmd_resonance_map(c);
    if (sub == "selftest") return cmd_selftest(c);
    std::cerr << "unknown subcommand '" << sub << "'\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return error_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return error_code(ErrorCategory::internal);
  }
}
