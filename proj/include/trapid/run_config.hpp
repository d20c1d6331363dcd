#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trapid/fluid_model.hpp"
#include "trapid/radial_grid.hpp"
#include "trapid/static_star.hpp"

namespace trapid {

/// Everything a CLI run needs. Radii are in units of L = (4 pi rho0)^{-1/2};
/// h is dimensionless.
struct RunConfig {
  std::optional<double> k;
  double rho0 = 1.0;

  double r_min = 1e-6;
  double r_max = 1e3;
  double dr = 0.01;
  double points_per_decade = 200.0;
  double tolerance = 1e-10;
  double window_lo = 1e2;
  double window_hi = 1e3;

  double r_star = 2.0;
  /// Defaults to Delta / 10.
  std::optional<double> delta;
  /// Defaults to delta * C1, the edge of the admissible range.
  std::optional<double> h;
  /// Defaults to r_star / 2.
  std::optional<double> Delta;

  std::vector<double> k_list;
  std::vector<double> r_star_list;
  std::vector<double> delta_list;
  std::vector<double> h_list;
  bool bisect = false;

  std::string out_dir = ".";
  bool plot = false;
  int workers = 1;

  /// Re-checks every physical invariant; throws DomainError.
  void validate() const;

  FluidModel model() const;
  FluidModel model(double k_value) const;
  SolveOptions solve_options() const;
  /// Grid spec in geometric units with the given extra exact nodes (geometric).
  GridSpec grid_spec(const FluidModel& model, const std::vector<double>& breakpoints = {}) const;
  double Delta_or_default(double r_star_value) const;
  double delta_or_default(double r_star_value) const;
};

/// "a,b,c" or a log-range "lo:hi:n" (n >= 2 points, inclusive ends).
std::vector<double> parse_number_list(const std::string& text);

}  // namespace trapid
