#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "trapid/ef_frame.hpp"
#include "trapid/static_star.hpp"
#include "trapid/trap_idata.hpp"

namespace trapid::test {

/// Seeded case generator for property tests; failures print the seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::vector<double> vec(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Breakpoint list for a perturbation at r_star (units of L), Delta = r_star/2.
inline std::vector<double> perturbation_cuts(const FluidModel& m, double r_star_L, double delta_L) {
  const double L = m.length_scale();
  const Perturbation p = Perturbation::make(r_star_L * L, delta_L * L, 1.0, 0.5 * r_star_L * L);
  auto cuts = required_nodes(p);
  cuts.push_back(1.5 * r_star_L * L);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

inline GridSpec grid_in_L(const FluidModel& m, double r_max_L = 1e3, double dr_L = 0.01,
                          double ppd = 200.0, std::vector<double> cuts = {}) {
  const double L = m.length_scale();
  GridSpec g;
  g.r_min = 1e-6 * L;
  g.r_max = r_max_L * L;
  g.dr = dr_L * L;
  g.points_per_decade = ppd;
  g.breakpoints = std::move(cuts);
  return g;
}

/// Static fields with the default perturbation layout r_star = 2L, delta = 0.1L.
inline EfStaticFields standard_fields(double k, double rho0 = 1.0, double r_max_L = 1e3) {
  const FluidModel m = FluidModel::make(k, rho0);
  return to_ef(solve_static(m, grid_in_L(m, r_max_L, 0.01, 200.0, perturbation_cuts(m, 2.0, 0.1))));
}

inline Perturbation standard_perturbation(const FluidModel& m, double h) {
  const double L = m.length_scale();
  return Perturbation::make(2.0 * L, 0.1 * L, h, 1.0 * L);
}

}  // namespace trapid::test
