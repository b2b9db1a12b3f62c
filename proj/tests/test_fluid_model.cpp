#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ek/errors.hpp"
#include "ek/fluid_model.hpp"
#include "ek/random_fields.hpp"
#include "ek/spectral.hpp"

using namespace ek;

TEST_CASE("variable change closed forms") {
  auto qm = CapillarityModel::quantum();
  CHECK(qm.ell_of_rho(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qm.ell_of_rho(1.0) == doctest::Approx(0.0));

  auto ck = CapillarityModel::constant();
  CHECK(ck.ell_of_rho(4.0) == doctest::Approx(2.0).epsilon(1e-12));  // 2(sqrt(rho)-1)
  CHECK(ck.ell_of_rho(1.0) == doctest::Approx(0.0));

  auto pw = CapillarityModel::power(1.0, 1.0);
  CHECK(pw.ell_of_rho(1.0) == doctest::Approx(0.0));
}

TEST_CASE("round trip ell <-> rho to 1e-10 across J") {
  for (auto mdl : {CapillarityModel::quantum(), CapillarityModel::constant(),
                   CapillarityModel::power(1.0, 2.0)}) {
    for (double rho = 0.25; rho <= 4.75; rho += 0.25)
      CHECK(mdl.rho_of_ell(mdl.ell_of_rho(rho)) == doctest::Approx(rho).epsilon(1e-10));
  }
}

TEST_CASE("out-of-interval arguments signal density-range violations") {
  auto mdl = CapillarityModel::constant();
  CHECK_THROWS_AS((void)mdl.ell_of_rho(0.1), Error);
  CHECK_THROWS_AS((void)mdl.ell_of_rho(6.0), Error);
  CHECK_THROWS_AS((void)mdl.rho_of_ell(100.0), Error);
}

TEST_CASE("bulk chemical potential: cubic closed form and normalization") {
  auto mdl = CapillarityModel::constant();  // pressure cubic by default
  // P' = 3(s-1)^2 -> g = 3(rho^2/2 - 2 rho + ln rho + 3/2)
  for (double rho : {0.5, 0.9, 1.7, 3.0}) {
    const double expect = 3.0 * (rho * rho / 2.0 - 2.0 * rho + std::log(rho) + 1.5);
    CHECK(mdl.g_of_rho(rho) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(mdl.g_of_rho(1.0) == doctest::Approx(0.0));
  // W' = g, W(1) = 0 by finite differences
  const double h = 1e-6;
  for (double rho : {0.8, 1.5}) {
    const double fd = (mdl.bulk_energy(rho + h) - mdl.bulk_energy(rho - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(mdl.g_of_rho(rho)).epsilon(1e-8));
  }
  CHECK(mdl.bulk_energy(1.0) == doctest::Approx(0.0));
}

TEST_CASE("zero sound speed forces gtilde'(0) = 0") {
  for (auto mdl : {CapillarityModel::quantum(), CapillarityModel::constant(),
                   CapillarityModel::power(1.0, 1.0,
                                           Pressure::poly(1.0, {1.0, 0.5}))}) {
    const double h = 1e-5;
    const double d = (mdl.gtilde(h) - mdl.gtilde(-h)) / (2.0 * h);
    CHECK(std::abs(d) < 1e-8);
    CHECK(mdl.gtilde(0.0) == doctest::Approx(0.0));
  }
}

TEST_CASE("gbar * ell = gtilde and abar continuity") {
  auto mdl = CapillarityModel::constant();
  for (double ell : {0.1, -0.1, 0.01, -0.01})
    CHECK(mdl.gbar(ell) * ell == doctest::Approx(mdl.gtilde(ell)).epsilon(1e-12));
  // series vs direct across the branch cut
  for (auto m : {CapillarityModel::quantum(), CapillarityModel::power(1.0, 1.5)}) {
    const double cut = CapillarityModel::series_cut;
    CHECK(m.gbar(cut * 0.999) == doctest::Approx(m.gbar(cut * 1.001)).epsilon(1e-6));
    CHECK(m.abar(cut * 0.999) == doctest::Approx(m.abar(cut * 1.001)).epsilon(1e-6));
  }
}

TEST_CASE("abar(0) matches a'(1) delta - 1 via finite differences") {
  for (auto mdl : {CapillarityModel::quantum(), CapillarityModel::constant(),
                   CapillarityModel::power(1.0, 1.0)}) {
    const double h = 1e-6;
    const double fd_ca = mdl.atilde(h) / h;  // atilde'(0) approx
    CHECK(std::abs(fd_ca - mdl.c_a()) < 1e-7);
    CHECK(mdl.abar(0.0) == doctest::Approx(mdl.c_a() - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("atilde(ell) = (1 + abar) ell and the constant-kappa exact linearity") {
  auto ck = CapillarityModel::constant();
  for (double ell : {-0.5, -0.05, 0.05, 0.5}) {
    CHECK(ck.atilde(ell) == doctest::Approx(0.5 * ell).epsilon(1e-12));
    CHECK((1.0 + ck.abar(ell)) * ell == doctest::Approx(ck.atilde(ell)).epsilon(1e-10));
  }
}

TEST_CASE("scattering scalars") {
  CHECK(CapillarityModel::quantum().delta() == doctest::Approx(1.0));
  CHECK(CapillarityModel::quantum(4.0).delta() == doctest::Approx(0.5));
  CHECK(CapillarityModel::quantum().c_a() == doctest::Approx(0.0));
  CHECK(CapillarityModel::constant().c_a() == doctest::Approx(0.5));
  CHECK(CapillarityModel::power(1.0, 1.0).c_a() == doctest::Approx(1.0));
  CHECK(CapillarityModel::constant().c_g() == doctest::Approx(0.0));  // cubic pressure
  auto quadP = CapillarityModel::power(1.0, 1.0, Pressure::poly(1.0, {1.0}));
  CHECK(quadP.c_g() == doctest::Approx(1.0));  // P''(1) = 2, delta = 1
}

TEST_CASE("gauge function: closed forms and ODE residual") {
  auto ck = CapillarityModel::constant();
  CHECK(ck.gauge_phi(4.0, 0.0) == doctest::Approx(2.0).epsilon(1e-14));  // gamma=0: sqrt(rho)
  auto qm = CapillarityModel::quantum();
  for (double gamma : {0.0, 1.0, 2.0, 3.75}) {
    CHECK(qm.gauge_phi(2.25, gamma) == doctest::Approx(1.5).epsilon(1e-14));  // a == 1
    CHECK(qm.gauge_phi(1.0, gamma) == doctest::Approx(1.0));
  }
  for (auto mdl : {CapillarityModel::quantum(), CapillarityModel::constant(),
                   CapillarityModel::power(1.0, 1.0)}) {
    for (double gamma : {0.0, 1.0, 2.0, 3.75})
      for (double rho = 0.5; rho <= 2.0; rho += 0.125)
        CHECK(std::abs(mdl.gauge_ode_residual(rho, gamma)) < 1e-10);
  }
}

TEST_CASE("synthetic closure model") {
  auto syn = CapillarityModel::synthetic(1.0, 1.0);
  CHECK(syn.atilde(0.3) == doctest::Approx(0.3));
  CHECK(syn.gtilde(0.3) == doctest::Approx(0.09));
  CHECK(syn.c_a() == doctest::Approx(1.0));
  CHECK(syn.c_g() == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)syn.ell_of_rho(1.0), Error);
}

TEST_CASE("profile norms: zero field, homogeneity, flags") {
  Grid g = Grid::cube(3, 16, 12.0);

  SUBCASE("zero field is admissible with epsilon0 = 0") {
    SpectralField z(g, Rep::physical);
    auto r = profile_norms(z, 2.6, 0.5);
    CHECK(r.epsilon0 == 0.0);
    CHECK(r.admissible);
  }

  SUBCASE("halving the amplitude halves every norm") {
    FieldRng rng(13);
    SpectralField f = to_physical(rng.complex_field(g, 2.0, 0.5, false));
    SpectralField f2 = f * cplx{0.5, 0.0};
    auto ra = profile_norms(real_part(f), 2.6, 1e9);
    auto rb = profile_norms(real_part(f2), 2.6, 1e9);
    CHECK(rb.h_high == doctest::Approx(0.5 * ra.h_high).epsilon(1e-10));
    CHECK(rb.hdot_m2 == doctest::Approx(0.5 * ra.hdot_m2).epsilon(1e-10));
    CHECK(rb.b111 == doctest::Approx(0.5 * ra.b111).epsilon(1e-10));
    CHECK(rb.x2_h1 == doctest::Approx(0.5 * ra.x2_h1).epsilon(1e-10));
    CHECK(rb.epsilon0 == doctest::Approx(0.5 * ra.epsilon0).epsilon(1e-10));
  }

  SUBCASE("plane wave is finite but flagged non-interior") {
    SpectralField f(g, Rep::fourier);
    // a single nonzero lattice mode: non-decaying surrogate
    f[1] = 1.0;
    auto r = profile_norms(to_physical(f), 2.6, 1e9);
    CHECK(r.x2_h1 > 0.0);
    CHECK_FALSE(r.interior_support);
  }

  SUBCASE("nonzero mean is rejected") {
    SpectralField f(g, Rep::physical);
    for (auto& v : f.data()) v = 1.0;
    CHECK_THROWS_AS((void)profile_norms(f, 2.6, 1.0), Error);
  }
}
