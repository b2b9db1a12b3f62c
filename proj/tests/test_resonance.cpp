#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ek/resonance.hpp"

using namespace ek;

namespace {
const ResonanceSymbol PP{+1, +1};
const ResonanceSymbol MM{-1, -1};

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
}  // namespace

TEST_CASE("(+,+) vanishes only at the origin") {
  CHECK(omega_eval(PP, {0, 0, 0}, {0, 0, 0}) == 0.0);
  CHECK(classify(PP, {0, 0, 0}, {0, 0, 0}, 1e-6) == ResonanceClass::spacetime_resonant);

  std::mt19937_64 eng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    Vec3 xi{u(eng), u(eng), u(eng)}, eta{u(eng), u(eng), u(eng)};
    if (dot(xi, xi) < 0.1 || dot(eta, eta) < 0.1) continue;
    CHECK(classify(PP, xi, eta, 1e-8) == ResonanceClass::nonresonant);
  }
}

TEST_CASE("(-,-) algebra: 2 eta.(xi-eta) and gradient 2 xi - 4 eta") {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    Vec3 xi{u(eng), u(eng), u(eng)}, eta{u(eng), u(eng), u(eng)};
    const Vec3 d = sub(xi, eta);
    CHECK(omega_eval(MM, xi, eta) == doctest::Approx(2.0 * dot(eta, d)).epsilon(1e-12));
    const Vec3 g = omega_grad_eta(MM, xi, eta);
    for (int k = 0; k < 3; ++k)
      CHECK(g[k] == doctest::Approx(2.0 * xi[k] - 4.0 * eta[k]).epsilon(1e-12));
  }
}

TEST_CASE("gradient matches central finite differences") {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double h = 1e-6;
  for (const auto& sym : {PP, MM, ResonanceSymbol{+1, -1}, ResonanceSymbol{-1, +1}}) {
    for (int i = 0; i < 50; ++i) {
      Vec3 xi{u(eng), u(eng), u(eng)}, eta{u(eng), u(eng), u(eng)};
      const Vec3 g = omega_grad_eta(sym, xi, eta);
      for (int k = 0; k < 3; ++k) {
        Vec3 ep = eta, em = eta;
        ep[k] += h;
        em[k] -= h;
        const double fd = (omega_eval(sym, xi, ep) - omega_eval(sym, xi, em)) / (2.0 * h);
        CHECK(std::abs(fd - g[k]) < 1e-8);
      }
    }
  }
}

TEST_CASE("(-,-) resonance sets: perpendicular locus and eta = xi/2") {
  std::mt19937_64 eng(23);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int i = 0; i < 100; ++i) {
    // construct eta perpendicular to xi - eta: time-resonant, not space-resonant
    Vec3 eta{u(eng), 0.0, 0.0};
    Vec3 xi{eta[0], u(eng), 0.0};  // xi - eta = (0, *, 0) is orthogonal to eta
    CHECK(classify(MM, xi, eta, 1e-10) == ResonanceClass::time_resonant);

    // eta = xi/2: space-resonant only (Omega = |xi|^2/2 there)
    Vec3 xi2{u(eng), u(eng), u(eng)};
    Vec3 half{0.5 * xi2[0], 0.5 * xi2[1], 0.5 * xi2[2]};
    CHECK(omega_eval(MM, xi2, half) == doctest::Approx(0.5 * dot(xi2, xi2)).epsilon(1e-12));
    CHECK(classify(MM, xi2, half, 1e-10) == ResonanceClass::space_resonant);
  }
}

TEST_CASE("classification is scale-invariant") {
  std::mt19937_64 eng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& sym : {PP, MM, ResonanceSymbol{+1, -1}}) {
    for (int i = 0; i < 100; ++i) {
      Vec3 xi{u(eng), u(eng), u(eng)}, eta{u(eng), u(eng), u(eng)};
      const auto base = classify(sym, xi, eta, 1e-6);
      for (double lam : {0.01, 7.3}) {
        Vec3 xs{lam * xi[0], lam * xi[1], lam * xi[2]};
        Vec3 es{lam * eta[0], lam * eta[1], lam * eta[2]};
        CHECK(classify(sym, xs, es, 1e-6) == base);
      }
    }
  }
}

TEST_CASE("resonance map sections") {
  // 17 points over [-2,2]: spacing 0.25, so eta = xi/2 = (0.5,0,0) is sampled
  auto rows = resonance_map(MM, {1.0, 0.0, 0.0}, 2.0, 17, 1e-3);
  CHECK(rows.size() == 17u * 17u);
  int spaceres = 0, timeres = 0;
  for (const auto& r : rows) {
    CHECK(r.inv_omega_capped <= 1e6);
    if (r.label == ResonanceClass::space_resonant) ++spaceres;
    if (r.label == ResonanceClass::time_resonant) ++timeres;
  }
  CHECK(spaceres >= 1);  // eta = xi/2
  CHECK(timeres >= 1);   // the eta perpendicular (xi - eta) sphere

  // the origin itself is spacetime-resonant; the cone labels keep every
  // other point of a zero-xi section honest under scaling
  auto zero = resonance_map(PP, {0.0, 0.0, 0.0}, 1.0, 3, 1e-3);
  CHECK(zero[4].label == ResonanceClass::spacetime_resonant);  // center point

  write_resonance_csv("resmap_test.csv", rows);
  std::remove("resmap_test.csv");
}
