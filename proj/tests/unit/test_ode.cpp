#include <cmath>

#include "doctest.h"
#include "trapid/ode.hpp"

using namespace trapid;

TEST_CASE("Dormand-Prince follows a rotation to tolerance across many targets") {
  const ode::DormandPrince<2> dp(
      [](double, const ode::State<2>& y) { return ode::State<2>{y[1], -y[0]}; },
      ode::Tolerance{1e-12, 1e-14});
  ode::State<2> y{1.0, 0.0};
  double x = 0.0;
  double h = 0.1;
  ode::StepStats stats;
  for (double target : {0.5, 1.0, 3.0, 10.0}) {
    y = dp.advance(x, y, target, h, stats);
    x = target;
    CHECK(y[0] == doctest::Approx(std::cos(target)).epsilon(1e-9));
    CHECK(y[1] == doctest::Approx(-std::sin(target)).epsilon(1e-9));
  }
  CHECK(stats.accepted > 0);
}

TEST_CASE("error shrinks with tolerance") {
  auto run = [](double rtol) {
    const ode::DormandPrince<2> dp(
        [](double t, const ode::State<2>& y) { return ode::State<2>{-y[0] * t, y[0]}; },
        ode::Tolerance{rtol, rtol * 1e-3});
    double h = 0.01;
    ode::StepStats s;
    const auto y = dp.advance(0.0, {1.0, 0.0}, 2.0, h, s);
    return std::abs(y[0] - std::exp(-2.0));
  };
  CHECK(run(1e-10) < run(1e-6));
  CHECK(run(1e-10) < 1e-9);
}

TEST_CASE("a zero-length advance is the identity") {
  const ode::DormandPrince<2> dp(
      [](double, const ode::State<2>& y) { return ode::State<2>{y[1], -y[0]}; }, {});
  double h = 0.1;
  ode::StepStats s;
  const auto y = dp.advance(1.0, {0.3, 0.7}, 1.0, h, s);
  CHECK(y[0] == 0.3);
  CHECK(y[1] == 0.7);
}
