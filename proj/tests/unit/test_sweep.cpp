#include "doctest.h"
#include "trapid/sweep.hpp"

using namespace trapid;

namespace {

RunConfig grid3x3(int workers) {
  RunConfig c;
  c.k_list = {0.3, 0.7};
  c.delta_list = {0.02, 0.05, 0.1};
  c.h_list = {5.0, 20.0, 80.0};
  c.bisect = true;
  c.workers = workers;
  return c;
}

}  // namespace

TEST_CASE("sweep rows follow the input product order") {
  const auto res = run_sweep(grid3x3(1));
  REQUIRE(res.rows.size() == 18);
  std::size_t i = 0;
  for (double k : {0.3, 0.7}) {
    const double L = FluidModel::make(k, 1.0).length_scale();
    for (double d : {0.02, 0.05, 0.1}) {
      for (double h : {5.0, 20.0, 80.0}) {
        const auto& r = res.rows[i++];
        CHECK(r.ok);
        CHECK(r.k == k);
        CHECK(r.delta == doctest::Approx(d * L).epsilon(1e-15));
        CHECK(r.h == h);
      }
    }
  }
  REQUIRE(res.fits.size() == 2);
  for (const auto& g : res.fits) CHECK(g.fits.has_value());
  REQUIRE(res.bisection.size() == 6);
  for (const auto& b : res.bisection) {
    REQUIRE(b.result.has_value());
    CHECK(b.result->conservative);
  }
}

TEST_CASE("output does not depend on the worker count") {
  const auto one = run_sweep(grid3x3(1));
  const auto many = run_sweep(grid3x3(5));
  CHECK(sweep_csv(one) == sweep_csv(many));
  CHECK(fits_json(one) == fits_json(many));
  CHECK(bisection_csv(one) == bisection_csv(many));
}

TEST_CASE("a missing h defaults to the admissible edge") {
  RunConfig c;
  c.k = 0.5;
  const auto res = run_sweep(c);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].ok);
  CHECK(res.rows[0].report.hypothesis_met);
  CHECK(res.rows[0].report.delta_over_h == doctest::Approx(1.0 / res.rows[0].report.constants.C1));
  CHECK_FALSE(res.fits[0].fits.has_value());
}
