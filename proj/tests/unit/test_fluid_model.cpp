#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "trapid/errors.hpp"
#include "trapid/fluid_model.hpp"

using namespace trapid;
using std::numbers::pi;

TEST_CASE("deficit angle at the closed-form points") {
  CHECK(deficit_angle(1.0) == 0.5);
  CHECK(deficit_angle(0.0) == 0.0);
  CHECK(deficit_angle(std::sqrt(1.0 / 3.0)) == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
  CHECK_THROWS_AS(deficit_angle(-0.1), DomainError);
  CHECK_THROWS_AS(deficit_angle(1.1), DomainError);
}

TEST_CASE("deficit angle is increasing and below one half") {
  test::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const double k = g.uniform(0.0, 0.999);
    const double a = deficit_angle(k);
    CHECK(a > 0.0);
    CHECK(a < 0.5);
    CHECK(deficit_angle(k + 1e-3) > a);
  }
}

TEST_CASE("singular coefficient satisfies 8 pi c = alpha") {
  CHECK(singular_density_coefficient(1.0) == doctest::Approx(1.0 / (16.0 * pi)).epsilon(1e-15));
  test::Gen g(12);
  for (int i = 0; i < 100; ++i) {
    const double k = g.uniform(0.01, 1.0);
    CHECK(8.0 * pi * singular_density_coefficient(k) ==
          doctest::Approx(deficit_angle(k)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(singular_density_coefficient(0.0), DomainError);
}

TEST_CASE("model validation and derived scales") {
  CHECK_THROWS_AS(FluidModel::make(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(FluidModel::make(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(FluidModel::make(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(FluidModel::make(std::nan(""), 1.0), DomainError);
  const FluidModel m = FluidModel::make(0.5, 2.0);
  CHECK(m.length_scale() == doctest::Approx(1.0 / std::sqrt(8.0 * pi)));
  CHECK(m.nu_exponent() == doctest::Approx(0.25 / 1.25));
  CHECK(m.alpha() == deficit_angle(0.5));
}
