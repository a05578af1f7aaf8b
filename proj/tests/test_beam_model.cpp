#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "orfd/beam_model.hpp"
#include "orfd/errors.hpp"
#include "test_support.hpp"

using namespace orfd;
using namespace orfd::test;

TEST_CASE("Table 1 layers reproduce the printed coefficients") {
  const BeamCoefficients c = table1();
  CHECK(rel(c.B, 1011.318) < 1e-3);
  CHECK(rel(c.C, 25282.944) < 1e-3);
  CHECK(rel(c.P, 2130860.555) < 1e-3);
  CHECK(c.time_scale == doctest::Approx(0.1));
}

TEST_CASE("hand-evaluated coefficients for unit layers") {
  // D = 1/12 for E = 1, nu = 0, so D1 h1^3 + D3 h3^3 = 1/6.
  // B = 4 / (2 * 1/6) = 12, C = 1 / (1/6) = 6, P = (1/6) / (12 * (1/144) * (1/6)) = 12.
  const LayerSpec unit{1, 1, 1, 1, 0};
  const BeamCoefficients c = derive_coefficients(unit, unit, unit);
  CHECK(c.B == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(c.C == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(c.P == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("coefficients are linear in the core shear modulus") {
  LayerSpec core = rubber();
  const BeamCoefficients base = derive_coefficients(pzt(), core, aluminium());
  core.shear_gpa *= 2.0;
  const BeamCoefficients twice = derive_coefficients(pzt(), core, aluminium());
  CHECK(twice.B == 2.0 * base.B);
  CHECK(twice.C == 2.0 * base.C);
  CHECK(twice.P == 2.0 * base.P);

  for (double g2 : {1e-6, 1e-4, 1e-2}) {
    core.shear_gpa = g2;
    const BeamCoefficients c = derive_coefficients(pzt(), core, aluminium());
    CHECK(rel(c.B / g2, base.B / rubber().shear_gpa) < 1e-13);
  }
}

TEST_CASE("time scale is overridable") {
  CHECK(derive_coefficients(pzt(), rubber(), aluminium(), 0.5).time_scale == 0.5);
  CHECK_THROWS_AS(derive_coefficients(pzt(), rubber(), aluminium(), 0.0), ValidationError);
}

TEST_CASE("layer validation names the field") {
  LayerSpec bad = pzt();
  bad.thickness = -0.01;
  try {
    derive_coefficients(bad, rubber(), aluminium());
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("top.thickness") != std::string::npos);
  }
  LayerSpec nu = rubber();
  nu.poisson = 0.5;
  CHECK_THROWS_AS(derive_coefficients(pzt(), nu, aluminium()), ValidationError);
  nu.poisson = -0.1;
  CHECK_THROWS_AS(derive_coefficients(pzt(), nu, aluminium()), ValidationError);
  LayerSpec e = aluminium();
  e.youngs_gpa = 0.0;
  CHECK_THROWS_AS(derive_coefficients(pzt(), rubber(), e), ValidationError);
}

TEST_CASE("large-shear condition") {
  SUBCASE("direct substitution") {
    // C/P = 1, B^2/P = 0.1.
    const auto s = large_shear_condition({1.0, 10.0, 10.0, 0.1}, 0.1);
    CHECK(s.margin == doctest::Approx(0.7475).epsilon(1e-13));
    CHECK(s.holds);
  }
  SUBCASE("Table 1 fails the condition at h = 1/21") {
    const double B = 1011.3177548531687, C = 25282.943871329222, P = 2130860.5555555555;
    const double h = 1.0 / 21.0;
    const double expected = (C / P - h * h / 4.0) - 2.5 * B * B / P;
    const auto s = large_shear_condition(table1(), h);
    CHECK(s.margin == doctest::Approx(expected).epsilon(1e-9));
    CHECK(s.margin == doctest::Approx(-1.18864).epsilon(1e-4));
    CHECK_FALSE(s.holds);
  }
  SUBCASE("decoupled beam") {
    const auto s = large_shear_condition({0.0, 1.0, 1.0, 0.1}, 0.05);
    CHECK(s.margin == doctest::Approx(1.0 - 0.05 * 0.05 / 4.0));
    CHECK(s.holds);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(large_shear_condition(synthetic(), 0.0), ValidationError);
    CHECK_THROWS_AS(large_shear_condition(synthetic(), 1.0), ValidationError);
    CHECK_THROWS_AS(large_shear_condition({1.0, 0.0, 1.0, 0.1}, 0.1), ValidationError);
  }
}

TEST_CASE("PDE observability bound") {
  CHECK(pde_observability_bound(3.0, 1.0) == doctest::Approx(2.0));
  CHECK(pde_observability_bound(2.0, 1.0) == doctest::Approx(0.0));
  const double pi = std::numbers::pi;
  CHECK(pde_observability_bound(10.0, pi) == doctest::Approx((2.0 / pi) * (10.0 - 2.0 * pi)));
  CHECK(pde_observability_bound(1.0, 1.0) < 0.0);
  CHECK_THROWS_AS(pde_observability_bound(0.0, 1.0), ValidationError);
}
