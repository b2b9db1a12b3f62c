#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ek/dynamics.hpp"
#include "ek/errors.hpp"
#include "ek/random_fields.hpp"
#include "ek/spectral.hpp"

using namespace ek;
using std::numbers::pi;

namespace {

double rel_l2(const SpectralField& a, const SpectralField& b) {
  SpectralField d = to_physical(a);
  d -= to_physical(b);
  const double nb = l2_norm(b);
  return nb > 0 ? l2_norm(d) / nb : l2_norm(d);
}

SpectralField small_random_z(FieldRng& rng, const Grid& g, double amp, double band) {
  SpectralField z = to_physical(rng.complex_field(g, band, 0.3, false));
  z *= cplx{amp / sup_norm(z), 0.0};
  return z;
}

}  // namespace

TEST_CASE("korteweg stress: constants, linearization, Bohm identity") {
  SUBCASE("constant density gives zero") {
    auto mdl = CapillarityModel::constant();
    Grid g = Grid::cube(2, 16, 5.0);
    SpectralField rho(g, Rep::physical);
    for (auto& v : rho.data()) v = 1.7;
    auto k = korteweg_divK(mdl, rho);
    for (const auto& c : k) CHECK(l2_norm(c) < 1e-12);
  }

  SUBCASE("single-mode exact closed form, constant kappa") {
    // rho = 1 + eps sin(kx): divK = (1 + eps sin) * d/dx(kappa * (-eps k^2 sin))
    // exactly; the measurable floor is FFT roundoff on the O(1) density scale,
    // about 1e-13 absolute, i.e. 1e-13/eps relative.
    auto mdl = CapillarityModel::constant();
    const double L = 8.0;
    Grid g = Grid::cube(1, 64, L);
    const double k = 2.0 * 2.0 * pi / L;
    for (double eps : {1e-5, 1e-6}) {
      SpectralField rho(g, Rep::physical), expect(g, Rep::physical);
      for (int i = 0; i < 64; ++i) {
        const double x = i * g.spacing(0);
        rho[i] = 1.0 + eps * std::sin(k * x);
        expect[i] = (1.0 + eps * std::sin(k * x)) * (-eps * k * k * k * std::cos(k * x));
      }
      auto divk = korteweg_divK(mdl, rho);
      CHECK(rel_l2(divk[0], expect) < (eps >= 1e-5 ? 1e-8 : 1e-7));
    }
  }

  SUBCASE("quantum capillarity matches the Bohm-potential form") {
    auto mdl = CapillarityModel::quantum();
    FieldRng rng(2);
    Grid g = Grid::cube(3, 16, 7.0);
    SpectralField pert = real_part(to_physical(rng.complex_field(g, 2.0, 0.3, false)));
    pert *= cplx{0.05 / sup_norm(pert), 0.0};
    SpectralField rho(g, Rep::physical);
    for (std::int64_t i = 0; i < g.size(); ++i) rho[i] = 1.0 + pert[i].real();

    auto divk = korteweg_divK(mdl, rho, false);
    // 2 rho grad(Lap sqrt(rho)/sqrt(rho))
    SpectralField sq = rho;
    for (auto& v : sq.data()) v = std::sqrt(v.real());
    SpectralField ratio = laplacian(sq);
    for (std::int64_t i = 0; i < g.size(); ++i) ratio[i] = ratio[i].real() / sq[i].real();
    for (int a = 0; a < 3; ++a) {
      SpectralField alt = to_physical(partial(ratio, a));
      for (std::int64_t i = 0; i < g.size(); ++i) alt[i] = 2.0 * rho[i].real() * alt[i].real();
      CHECK(rel_l2(divk[a], alt) < 1e-8);
    }
  }
}

TEST_CASE("full nonlinearity F") {
  auto mdl = CapillarityModel::constant();
  Grid g = Grid::cube(2, 16, 6.0);

  SUBCASE("zero field maps to zero") {
    SpectralField z(g, Rep::physical);
    CHECK(l2_norm(full_nonlinearity_F(mdl, z)) == 0.0);
  }

  SUBCASE("real constant z = c gives -i gtilde(c)") {
    SpectralField z(g, Rep::physical);
    for (auto& v : z.data()) v = 0.3;
    SpectralField f = full_nonlinearity_F(mdl, z, false);
    const cplx expect{0.0, -mdl.gtilde(0.3)};
    for (std::int64_t i = 0; i < f.size(); ++i)
      CHECK(std::abs(f[i] - expect) < 1e-13);
  }

  SUBCASE("two-path agreement with the scalar system right-hand sides") {
    FieldRng rng(4);
    SpectralField z = small_random_z(rng, g, 0.05, 6.0);
    SpectralField f = full_nonlinearity_F(mdl, z, false);
    // real part: -grad psi . grad ell - atilde lap psi
    // imag part: (1/2)|grad ell|^2 - (1/2)|grad psi|^2 + atilde lap ell - gtilde
    SpectralField ell = real_part(z), psi = imag_part(z);
    SpectralField lapl = laplacian(ell), lapp = laplacian(psi);
    SpectralField re(g, Rep::physical), im(g, Rep::physical);
    std::vector<SpectralField> dl, dp;
    for (int a = 0; a < 2; ++a) {
      dl.push_back(to_physical(partial(ell, a)));
      dp.push_back(to_physical(partial(psi, a)));
    }
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const double at = mdl.atilde(ell[i].real());
      double adv = 0, l2g = 0, p2g = 0;
      for (int a = 0; a < 2; ++a) {
        adv += dp[a][i].real() * dl[a][i].real();
        l2g += dl[a][i].real() * dl[a][i].real();
        p2g += dp[a][i].real() * dp[a][i].real();
      }
      re[i] = -adv - at * lapp[i].real();
      im[i] = 0.5 * l2g - 0.5 * p2g + at * lapl[i].real() - mdl.gtilde(ell[i].real());
    }
    double worst = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::abs(f[i].real() - re[i].real()));
      worst = std::max(worst, std::abs(f[i].imag() - im[i].real()));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("N2: trivial values and the dual-form identity") {
  Grid g = Grid::cube(2, 16, 6.0);
  auto norm = CapillarityModel::synthetic(1.0, 1.0);

  SUBCASE("zero") {
    SpectralField z(g, Rep::physical);
    CHECK(l2_norm(quadratic_part_N2(norm, z)) == 0.0);
  }

  SUBCASE("real constant with c_a = c_g = 1 gives -i c^2") {
    SpectralField z(g, Rep::physical);
    for (auto& v : z.data()) v = 0.4;
    SpectralField n2 = quadratic_part_N2(norm, z, false);
    for (std::int64_t i = 0; i < n2.size(); ++i)
      CHECK(std::abs(n2[i] - cplx{0.0, -0.16}) < 1e-14);
  }

  SUBCASE("complex display equals the real-variable form to 1e-12") {
    FieldRng rng(8);
    for (auto mdl : {CapillarityModel::synthetic(1.0, 1.0), CapillarityModel::constant()}) {
      for (int trial = 0; trial < 5; ++trial) {
        SpectralField z = small_random_z(rng, g, 0.5, 6.0);
        SpectralField a = quadratic_part_N2(mdl, z, false);
        SpectralField b = quadratic_part_real_form(mdl, z, false);
        a -= b;
        CHECK(sup_norm(a) < 1e-12);
      }
    }
  }
}

TEST_CASE("N3: cubic order of vanishing and exact truncation") {
  Grid g = Grid::cube(2, 16, 6.0);
  FieldRng rng(12);

  SUBCASE("zero field") {
    auto mdl = CapillarityModel::constant();
    SpectralField z(g, Rep::physical);
    CHECK(l2_norm(cubic_remainder_N3(mdl, z)) == 0.0);
  }

  SUBCASE("scaling ||N3(eps z)|| / eps^3 approaches a constant") {
    auto mdl = CapillarityModel::quantum();  // N3 = -i gtilde(ell), exactly cubic-led
    SpectralField z = small_random_z(rng, g, 1.0, 6.0);
    double prev_ratio = 0.0;
    std::vector<double> ratios;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      SpectralField ze = z * cplx{eps, 0.0};
      ratios.push_back(l2_norm(cubic_remainder_N3(mdl, ze, false)) / (eps * eps * eps));
    }
    CHECK(std::abs(ratios[1] / ratios[0] - 1.0) < 0.05);
    CHECK(std::abs(ratios[2] / ratios[1] - 1.0) < 0.005);
    (void)prev_ratio;
  }

  SUBCASE("exactly linear atilde and quadratic gtilde leave no remainder") {
    auto mdl = CapillarityModel::synthetic(0.7, 1.3);
    SpectralField z = small_random_z(rng, g, 0.3, 6.0);
    CHECK(sup_norm(cubic_remainder_N3(mdl, z, false)) < 1e-12);
  }
}

TEST_CASE("evolve_z: exact free flow, order, reversibility") {
  auto mdl = CapillarityModel::quantum();
  Grid g = Grid::cube(2, 32, 8.0);
  FieldRng rng(21);
  SpectralField z0 = small_random_z(rng, g, 1e-2, 2.0);

  SUBCASE("linear-only switch reproduces the propagator exactly") {
    SolverConfig cfg;
    cfg.linear_only = true;
    cfg.dt = 0.05;
    for (auto scheme : {Scheme::strang_split_rk4, Scheme::etd_rk4}) {
      cfg.scheme = scheme;
      ZTrajectory t = evolve_z(mdl, cfg, z0, 0.0, 1.0);
      CHECK(rel_l2(t.z.back(), free_propagate(z0, 1.0)) < 1e-10);
    }
  }

  SUBCASE("strang order >= 1.9, etdrk4 order >= 3.5") {
    SolverConfig ref;
    ref.scheme = Scheme::etd_rk4;
    ref.dt = 1e-3;
    ref.defect_check_interval = 0;
    SpectralField zref = evolve_z(mdl, ref, z0, 0.0, 0.5).z.back();
    for (auto [scheme, dt0, min_order] :
         {std::tuple{Scheme::strang_split_rk4, 4e-3, 1.9},
          std::tuple{Scheme::etd_rk4, 5e-2, 3.5}}) {
      SolverConfig cfg;
      cfg.scheme = scheme;
      cfg.defect_check_interval = 0;
      std::vector<double> errs;
      for (double dt : {dt0, dt0 / 2, dt0 / 4}) {
        cfg.dt = dt;
        errs.push_back(rel_l2(evolve_z(mdl, cfg, z0, 0.0, 0.5).z.back(), zref));
      }
      const double o1 = std::log2(errs[0] / errs[1]);
      const double o2 = std::log2(errs[1] / errs[2]);
      CHECK(std::min(o1, o2) >= doctest::Approx(min_order).epsilon(0.1));
    }
  }

  SUBCASE("forward then backward returns the data") {
    SolverConfig cfg;
    cfg.scheme = Scheme::strang_split_rk4;
    cfg.dt = 4e-3;
    cfg.defect_check_interval = 0;
    ZTrajectory fwd = evolve_z(mdl, cfg, z0, 0.0, 1.0);
    ZTrajectory bwd = evolve_z(mdl, cfg, fwd.z.back(), 1.0, 0.0);
    CHECK(rel_l2(bwd.z.back(), z0) < 1e-6);
  }
}

TEST_CASE("primitive solver: fixed point, conservation, dual-formulation agreement") {
  auto mdl = CapillarityModel::quantum();
  Grid g = Grid::cube(3, 16, 16.0 * pi / 3.0);
  SolverConfig cfg;
  cfg.scheme = Scheme::rk4_pseudospectral;
  cfg.dt = 0.05;

  SUBCASE("equilibrium is a fixed point") {
    FluidState eq = FluidState::equilibrium(g);
    FluidState s = step_primitive(mdl, cfg, eq, 0.05);
    SpectralField d = s.rho - eq.rho;
    CHECK(sup_norm(d) < 1e-14);
    for (int a = 0; a < 3; ++a) CHECK(sup_norm(s.u[a]) < 1e-14);
  }

  SUBCASE("mass conservation, hamiltonian drift, dual-formulation agreement") {
    FieldRng rng(7);
    SpectralField z0 = to_physical(rng.complex_field(g, 0.65, 18.0, false));
    z0 *= cplx{1e-2 / sup_norm(z0), 0.0};
    z0 = dealias(z0);
    FluidState s0 = from_complex(mdl, MadelungState{z0});

    PrimitiveTrajectory traj = evolve_primitive(mdl, cfg, s0, 0.0, 1.0);
    const double m0 = traj.monitors.front().mass, m1 = traj.monitors.back().mass;
    CHECK(std::abs(m1 - m0) < 1e-12);
    const double E0 = traj.monitors.front().hamiltonian,
                 E1 = traj.monitors.back().hamiltonian;
    CHECK(std::abs(E1 - E0) < 1e-8 * std::abs(E0));

    SolverConfig zc;
    zc.scheme = Scheme::strang_split_rk4;
    zc.dt = 0.05;
    zc.defect_check_interval = 0;
    ZTrajectory zt = evolve_z(mdl, zc, z0, 0.0, 1.0);
    FluidState zs = from_complex(mdl, MadelungState{zt.z.back()});
    SpectralField drho = zs.rho - traj.states.back().rho;
    SpectralField pert = traj.states.back().rho;
    for (auto& v : pert.data()) v -= 1.0;
    CHECK(l2_norm(drho) / l2_norm(pert) < 1e-6);
  }
}

TEST_CASE("hamiltonian basics") {
  auto mdl = CapillarityModel::constant();
  Grid g = Grid::cube(2, 16, 9.0);
  CHECK(hamiltonian(mdl, FluidState::equilibrium(g)) == doctest::Approx(0.0));

  FluidState s = FluidState::equilibrium(g);
  FieldRng rng(3);
  SpectralField chi = real_part(to_physical(rng.complex_field(g, 2.0, 0.3, false)));
  for (int a = 0; a < 2; ++a) s.u[a] = real_part(partial(chi, a));
  double u2 = 0.0;
  for (int a = 0; a < 2; ++a) u2 += l2_norm(s.u[a]) * l2_norm(s.u[a]);
  CHECK(hamiltonian(mdl, s) == doctest::Approx(0.5 * u2).epsilon(1e-12));
}

TEST_CASE("stability_dt scalings") {
  auto mdl = CapillarityModel::constant();
  const double L = 10.0;
  std::vector<double> dts;
  for (int n : {16, 32, 64})
    dts.push_back(stability_dt(mdl, Grid::cube(3, n, L), Scheme::rk4_pseudospectral));
  // dt_max ~ spacing^2
  CHECK(dts[0] / dts[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(dts[1] / dts[2] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(dts[0] > 0.0);

  Grid g = Grid::cube(3, 16, L);
  CHECK(stability_dt(mdl, g, Scheme::etd_rk4) > stability_dt(mdl, g, Scheme::rk4_pseudospectral));
}

TEST_CASE("density-range violations reject the step") {
  auto mdl = CapillarityModel::quantum();
  Grid g = Grid::cube(1, 16, 5.0);
  SolverConfig cfg;
  cfg.scheme = Scheme::rk4_pseudospectral;
  cfg.dt = 0.01;
  FluidState s = FluidState::equilibrium(g);
  for (auto& v : s.rho.data()) v = 0.1;  // outside J
  CHECK_THROWS_AS((void)step_primitive(mdl, cfg, s, 0.01), Error);
}
