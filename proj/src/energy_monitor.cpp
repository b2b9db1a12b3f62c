#include "ek/energy_monitor.hpp"

#include <cmath>

#include "ek/errors.hpp"
#include "ek/spectral.hpp"

namespace ek {

namespace {

SpectralField half_laplacian_power(const SpectralField& f, double gamma) {
  SpectralField out = to_fourier(f);
  const auto& xi2 = f.grid().xi2_table();
  for (std::int64_t i = 0; i < out.size(); ++i)
    out[i] *= std::pow(xi2[i], gamma);  // |xi|^{2 gamma}
  return to_physical(out);
}

}  // namespace

double weighted_energy(const CapillarityModel& model, const FluidState& state, double gamma,
                       const EnergyReference* subtract) {
  const Grid& g = state.grid();
  const SpectralField rho = to_physical(state.rho);

  SpectralField ell(g, Rep::physical);
  for (std::int64_t i = 0; i < ell.size(); ++i)
    ell[i] = model.ell_of_rho(rho[i].real());

  SpectralField weight(g, Rep::physical);
  for (std::int64_t i = 0; i < weight.size(); ++i)
    weight[i] = model.gauge_phi(rho[i].real(), gamma);

  double acc = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    SpectralField v = real_part(partial(ell, a));
    SpectralField u = to_physical(state.u[a]);
    if (subtract) {
      v -= to_physical(subtract->v[a]);
      u -= to_physical(subtract->u[a]);
    }
    SpectralField wv = half_laplacian_power(v, gamma);
    SpectralField wu = half_laplacian_power(u, gamma);
    for (std::int64_t i = 0; i < wv.size(); ++i) {
      acc += std::norm(weight[i].real() * wv[i]);
      acc += std::norm(weight[i].real() * wu[i]);
    }
  }
  return acc * g.cell_volume();
}

namespace {

EnergyReport accumulate(const CapillarityModel& model, const std::vector<double>& times,
                        const std::vector<FluidState>& states, double gamma,
                        double integral_ceiling) {
  EnergyReport rep;
  rep.gamma = gamma;
  double integral = 0.0;
  double prev_val = 0.0;
  const auto& J = model.density_interval();
  for (size_t i = 0; i < times.size(); ++i) {
    const FluidState& s = states[i];
    const SpectralField rho = to_physical(s.rho);
    double rlo = 1e300, rhi = -1e300;
    for (const auto& v : rho.data()) {
      rlo = std::min(rlo, v.real());
      rhi = std::max(rhi, v.real());
    }
    const double lap_sup = sup_norm(laplacian(rho));
    SpectralField divu(s.grid(), Rep::fourier);
    for (int a = 0; a < s.grid().dim(); ++a) divu += to_fourier(partial(s.u[a], a));
    const double div_sup = sup_norm(divu);
    const double val = lap_sup + div_sup;
    if (i > 0) integral += 0.5 * (times[i] - times[i - 1]) * (val + prev_val);
    prev_val = val;

    rep.t.push_back(times[i]);
    rep.blowup_integral.push_back(integral);
    rep.rho_min.push_back(rlo);
    rep.rho_max.push_back(rhi);
    if (rlo < J.lo || rhi > J.hi) rep.range_ok = false;
    bool in_range = rlo >= J.lo && rhi <= J.hi;
    double e = 0.0;
    if (in_range) e = weighted_energy(model, s, gamma);
    rep.E_gamma.push_back(e);
  }
  rep.integral_ok = integral <= integral_ceiling && std::isfinite(integral);
  rep.continuation_ok = rep.integral_ok && rep.range_ok;
  return rep;
}

}  // namespace

EnergyReport blowup_monitor(const CapillarityModel& model, const PrimitiveTrajectory& traj,
                            double gamma, double integral_ceiling) {
  return accumulate(model, traj.times, traj.states, gamma, integral_ceiling);
}

EnergyReport blowup_monitor_z(const CapillarityModel& model, const ZTrajectory& traj,
                              double gamma, double integral_ceiling) {
  std::vector<FluidState> states;
  states.reserve(traj.z.size());
  for (const auto& z : traj.z)
    states.push_back(from_complex(model, MadelungState{z}));
  return accumulate(model, traj.times, states, gamma, integral_ceiling);
}

}  // namespace ek
