#include <cmath>

#include "doctest.h"
#include "trapid/errors.hpp"
#include "trapid/run_config.hpp"

using namespace trapid;

TEST_CASE("number lists and log ranges") {
  CHECK(parse_number_list("0.3,0.6,0.9") == std::vector<double>{0.3, 0.6, 0.9});
  const auto r = parse_number_list("1:100:3");
  REQUIRE(r.size() == 3);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(r[2] == 100.0);
  CHECK_THROWS_AS(parse_number_list(""), DomainError);
  CHECK_THROWS_AS(parse_number_list("1,abc"), DomainError);
  CHECK_THROWS_AS(parse_number_list("1:100"), DomainError);
  CHECK_THROWS_AS(parse_number_list("0:100:3"), DomainError);
  CHECK_THROWS_AS(parse_number_list("1:100:1"), DomainError);
  CHECK_THROWS_AS(parse_number_list("1:100:2.5"), DomainError);
}

TEST_CASE("defaults derive from r_star") {
  RunConfig c;
  c.k = 0.5;
  CHECK_NOTHROW(c.validate());
  CHECK(c.Delta_or_default(2.0) == 1.0);
  CHECK(c.delta_or_default(2.0) == doctest::Approx(0.1));
  c.Delta = 0.8;
  CHECK(c.delta_or_default(2.0) == doctest::Approx(0.08));
}

TEST_CASE("physical invariants are re-checked") {
  auto bad = [](auto mutate) {
    RunConfig c;
    c.k = 0.5;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.k = 1.0; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.rho0 = -1; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.r_max = c.r_min; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.window_hi = 2 * c.window_lo; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.delta = 1.5; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.Delta = 3.0; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.h = 0.0; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.k_list = {0.3, 1.2}; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.r_star = 900; }).validate(), DomainError);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.workers = 0; }).validate(), DomainError);
  CHECK_THROWS_AS(RunConfig{}.model(), DomainError);
}

TEST_CASE("grid spec is expressed in units of L") {
  RunConfig c;
  c.k = 0.5;
  c.rho0 = 4.0;
  const auto m = c.model();
  const auto s = c.grid_spec(m, {0.3});
  CHECK(s.r_max == doctest::Approx(1e3 * m.length_scale()));
  CHECK(s.dr == doctest::Approx(0.01 * m.length_scale()));
  CHECK(s.breakpoints == std::vector<double>{0.3});
}
