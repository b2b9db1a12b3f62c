#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "ek/errors.hpp"
#include "ek/field_io.hpp"
#include "ek/random_fields.hpp"
#include "ek/spectral.hpp"

using namespace ek;
using std::numbers::pi;

namespace {

SpectralField coordinate_wave(const Grid& g, const std::vector<int>& kvec) {
  // e^{i xi0. x} sampled on the lattice
  SpectralField f(g, Rep::physical);
  const int d = g.dim();
  int idx[3];
  for (std::int64_t i = 0; i < f.size(); ++i) {
    g.unravel(i, idx);
    double ph = 0.0;
    for (int a = 0; a < d; ++a)
      ph += 2.0 * pi * kvec[a] * idx[a] / static_cast<double>(g.points()[a]);
    f[i] = cplx{std::cos(ph), std::sin(ph)};
  }
  return f;
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d -= (a.rep() == b.rep()) ? b : (a.rep() == Rep::physical ? to_physical(b) : to_fourier(b));
  const double nb = l2_norm(a);
  return nb > 0 ? l2_norm(d) / nb : l2_norm(d);
}

}  // namespace

TEST_CASE("constant field transforms to a pure zero mode") {
  Grid g = Grid::cube(2, 16, 5.0);
  SpectralField f(g, Rep::physical);
  for (auto& v : f.data()) v = cplx{3.25, -1.5};
  SpectralField fh = to_fourier(f);
  CHECK(std::abs(fh[0] - cplx{3.25, -1.5} * std::sqrt(double(g.size()))) < 1e-12 * g.size());
  double off = 0.0;
  for (std::int64_t i = 1; i < fh.size(); ++i) off = std::max(off, std::abs(fh[i]));
  CHECK(off < 1e-12);
}

TEST_CASE("single plane wave occupies a single coefficient") {
  Grid g = Grid::cube(3, 16, 2.0 * pi);
  SpectralField f = coordinate_wave(g, {3, -2, 5});
  SpectralField fh = to_fourier(f);
  double largest = 0.0, second = 0.0;
  for (const auto& v : fh.data()) {
    const double m = std::abs(v);
    if (m > largest) { second = largest; largest = m; }
    else second = std::max(second, m);
  }
  CHECK(largest == doctest::Approx(std::sqrt(double(g.size()))).epsilon(1e-12));
  CHECK(second < 1e-10);
}

TEST_CASE("random field round trip and Parseval") {
  FieldRng rng(101);
  Grid g = Grid::cube(3, 16, 7.0);
  SpectralField f = to_physical(rng.complex_field(g, 0.0, 0.0, true));
  CHECK(rel_diff(f, to_physical(to_fourier(f))) < 1e-12);
  CHECK(l2_norm(f) == doctest::Approx(l2_norm(to_fourier(f))).epsilon(1e-12));
}

TEST_CASE("derivative of sin and of constants") {
  const double L = 11.0;
  Grid g = Grid::cube(1, 64, L);
  SpectralField f(g, Rep::physical), expect(g, Rep::physical);
  for (int i = 0; i < 64; ++i) {
    const double x = i * g.spacing(0);
    f[i] = std::sin(2.0 * pi * x / L);
    expect[i] = (2.0 * pi / L) * std::cos(2.0 * pi * x / L);
  }
  const int one = 1;
  SpectralField df = derivative(f, std::span<const int>(&one, 1));
  CHECK(rel_diff(df, expect) < 1e-12);

  SpectralField c(g, Rep::physical);
  for (auto& v : c.data()) v = 4.0;
  CHECK(l2_norm(derivative(c, std::span<const int>(&one, 1))) < 1e-13);
}

TEST_CASE("mixed partials commute on random band-limited fields") {
  FieldRng rng(7);
  Grid g = Grid::cube(2, 32, 3.0);
  SpectralField f = rng.complex_field(g, 10.0, 0.05, true);
  SpectralField dxy = partial(partial(f, 0), 1);
  SpectralField dyx = partial(partial(f, 1), 0);
  CHECK(rel_diff(dxy, dyx) < 1e-13);
}

TEST_CASE("free propagator: identity at t=0, unitary, group law, commutes with derivative") {
  FieldRng rng(11);
  Grid g = Grid::cube(3, 16, 9.0);
  SpectralField f = rng.complex_field(g, 0.0, 0.02, true);
  CHECK(rel_diff(f, free_propagate(f, 0.0)) < 1e-14);
  CHECK(l2_norm(free_propagate(f, 0.37)) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  CHECK(sobolev_norm(free_propagate(f, 1.3), 1.7, true) ==
        doctest::Approx(sobolev_norm(f, 1.7, true)).epsilon(1e-11));
  CHECK(rel_diff(free_propagate(free_propagate(f, 0.4), 0.85), free_propagate(f, 1.25)) < 1e-12);
  CHECK(rel_diff(partial(free_propagate(f, 0.6), 1), free_propagate(partial(f, 1), 0.6)) < 1e-12);
}

TEST_CASE("1-D Gaussian free evolution matches the closed-form complex Gaussian") {
  // u0 = exp(-x^2/(4 sigma)); u(t) = sqrt(sigma/(sigma+it)) exp(-x^2/(4(sigma+it)))
  const double L = 80.0, sigma = 1.2, t = 2.5;
  Grid g = Grid::cube(1, 1024, L);
  SpectralField f(g, Rep::physical);
  for (int i = 0; i < 1024; ++i) {
    const double x = i * g.spacing(0) - L / 2;
    f[i] = std::exp(-x * x / (4.0 * sigma));
  }
  SpectralField u = to_physical(free_propagate(f, t));
  double maxerr = 0.0;
  const cplx s{sigma, 0.0}, sit{sigma, t};
  for (int i = 0; i < 1024; ++i) {
    const double x = i * g.spacing(0) - L / 2;
    const cplx expect = std::sqrt(s / sit) * std::exp(-x * x / (4.0 * sit));
    maxerr = std::max(maxerr, std::abs(u[i] - expect));
  }
  CHECK(maxerr < 1e-8);
}

TEST_CASE("sobolev norms: plane-wave eigenvalue, s=0 is L2, H^s >= L2") {
  Grid g = Grid::cube(3, 16, 2.0 * pi);
  SpectralField w = coordinate_wave(g, {2, 1, -2});
  const double xi0 = std::sqrt(4.0 + 1.0 + 4.0);
  CHECK(sobolev_norm(w, 1.4, true) ==
        doctest::Approx(std::pow(xi0, 1.4) * l2_norm(w)).epsilon(1e-12));

  FieldRng rng(23);
  SpectralField f = rng.complex_field(g, 0.0, 0.1, true);
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  CHECK(sobolev_norm(f, 1.9) >= l2_norm(f));
}

TEST_CASE("homogeneous negative-order norm rejects a nonzero mean") {
  Grid g = Grid::cube(2, 16, 4.0);
  SpectralField f(g, Rep::physical);
  for (auto& v : f.data()) v = 1.0;
  CHECK_THROWS_AS((void)sobolev_norm(f, -2.0, true), Error);
}

TEST_CASE("lebesgue norms: constants, Parseval agreement, Hoelder") {
  Grid g = Grid::cube(3, 16, 3.0);
  SpectralField c(g, Rep::physical);
  for (auto& v : c.data()) v = cplx{0.0, -2.0};
  const double V = g.volume();
  CHECK(lebesgue_norm(c, 1.0) == doctest::Approx(2.0 * V).epsilon(1e-12));
  CHECK(lebesgue_norm(c, 4.0) == doctest::Approx(2.0 * std::pow(V, 0.25)).epsilon(1e-12));
  CHECK(lebesgue_norm(c, std::numeric_limits<double>::infinity()) == doctest::Approx(2.0));

  FieldRng rng(5);
  SpectralField f = rng.complex_field(g, 0.0, 0.03, true);
  CHECK(lebesgue_norm(f, 2.0) == doctest::Approx(l2_norm(to_fourier(f))).epsilon(1e-12));
  SpectralField h = rng.complex_field(g, 0.0, 0.03, true);
  CHECK(lebesgue_norm(pointwise_multiply(f, h), 1.0) <=
        lebesgue_norm(f, 2.0) * lebesgue_norm(h, 2.0) * (1.0 + 1e-12));
}

TEST_CASE("snapshot round trip is bit-exact on the complex64 payload") {
  FieldRng rng(77);
  Grid g(std::vector<int>{16, 8}, std::vector<double>{2.5, 7.0});
  SpectralField f = to_physical(rng.complex_field(g, 0.0, 0.0, true));
  const char* path = "snapshot_test.field";
  save_field(f, path, 3.5);
  SpectralField r1 = load_field(path);
  CHECK(r1.grid() == f.grid());
  CHECK(r1.rep() == f.rep());
  CHECK(load_field_time(path) == doctest::Approx(3.5));
  save_field(r1, "snapshot_test2.field", 3.5);
  SpectralField r2 = load_field("snapshot_test2.field");
  for (std::int64_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].real() == r2[i].real());
    CHECK(r1[i].imag() == r2[i].imag());
  }
  std::remove("snapshot_test.field");
  std::remove("snapshot_test.field.meta");
  std::remove("snapshot_test2.field");
  std::remove("snapshot_test2.field.meta");
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid::cube(3, 9, 1.0), Error);    // odd
  CHECK_THROWS_AS(Grid::cube(3, 14, 1.0), Error);   // factor 7
  CHECK_THROWS_AS(Grid::cube(1, 4, 1.0), Error);    // too small
  CHECK_THROWS_AS(Grid::cube(2, 16, -1.0), Error);  // bad box
  CHECK_NOTHROW(Grid::cube(3, 48, 1.0));            // acceptance-suite size
}
