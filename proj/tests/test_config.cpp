#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ek/config.hpp"
#include "ek/errors.hpp"

using namespace ek;

TEST_CASE("defaults round trip through echo") {
  ExperimentConfig c;
  ExperimentConfig back = ExperimentConfig::from_string(c.echo());
  CHECK(back.n == c.n);
  CHECK(back.box_length == doctest::Approx(c.box_length));
  CHECK(back.kappa_family == c.kappa_family);
  CHECK(back.plan.T_n == c.plan.T_n);
  CHECK(back.solver.dt == doctest::Approx(c.solver.dt));
  CHECK(back.rng_seed == c.rng_seed);
  CHECK(back.echo() == c.echo());
}

TEST_CASE("sectioned parsing with comments") {
  const char* text = R"(
# experiment
rng_seed = 99
[grid]
dim = 2
n = 32           ; inline comment
box_length = 12.5
[model]
kappa_family = power
kappa_exponent = 2.0
pressure = poly
pressure_coeffs = 1.0 0.5
[plan]
T_n = 4 8
[solver]
scheme = strang_split_rk4
dt = 0.005
dealias = off
)";
  ExperimentConfig c = ExperimentConfig::from_string(text);
  CHECK(c.rng_seed == 99);
  CHECK(c.dim == 2);
  CHECK(c.n == 32);
  CHECK(c.kappa_family == "power");
  CHECK(c.pressure_coeffs == std::vector<double>{1.0, 0.5});
  CHECK(c.plan.T_n == std::vector<double>{4.0, 8.0});
  CHECK(c.solver.scheme == Scheme::strang_split_rk4);
  CHECK_FALSE(c.solver.dealias);
  CHECK(c.make_model().c_g() == doctest::Approx(1.0));
}

TEST_CASE("line-anchored failures") {
  auto expect_fail = [](const char* text, const char* needle) {
    try {
      (void)ExperimentConfig::from_string(text);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::config_parse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_fail("[grid]\nbogus_key = 3\n", "line 2");
  expect_fail("[nosuch]\nx = 1\n", "unknown section");
  expect_fail("[grid]\nn = abc\n", "expected a number");
  expect_fail("stray = 1\n", "unknown top-level key");
  expect_fail("[solver]\ndealias = maybe\n", "expected on/off");
}

TEST_CASE("model factory covers the families") {
  ExperimentConfig c;
  c.kappa_family = "quantum";
  CHECK(c.make_model().c_a() == doctest::Approx(0.0));
  c.kappa_family = "constant";
  CHECK(c.make_model().c_a() == doctest::Approx(0.5));
  c.kappa_family = "synthetic";
  CHECK(c.make_model().is_synthetic());
  c.kappa_family = "bogus";
  CHECK_THROWS_AS((void)c.make_model(), Error);
}
