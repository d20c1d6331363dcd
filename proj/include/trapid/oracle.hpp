#pragma once

#include <functional>
#include <span>
#include <vector>

#include "trapid/fluid_model.hpp"
#include "trapid/radial_grid.hpp"
#include "trapid/static_star.hpp"

/// Reference computations kept independent of the production paths: a
/// truncated Taylor series about the regular center, the closed-form singular
/// solution, a fixed-step RK4 re-integration of the (rho, m) system, dense
/// composite Simpson quadrature and closed-form single-variable regression.
namespace trapid::oracle {

/// rho(r) = rho0 + rho2 r^2 + rho4 r^4,  m(r) = m3 r^3 + m5 r^5 + m7 r^7.
struct CenterSeries {
  double rho0 = 0.0;
  double rho2 = 0.0;
  double rho4 = 0.0;
  double m3 = 0.0;
  double m5 = 0.0;
  double m7 = 0.0;

  double rho(double r) const;
  double drho(double r) const;
  double m(double r) const;
  /// Relative residual |rho' - TOV(rho, m)| / |rho2 r| of the truncated series.
  double relative_residual(const FluidModel& model, double r) const;
};

CenterSeries center_series(const FluidModel& model);

/// Right-hand side of the static system in the plain (rho, m) variables.
std::array<double, 2> tov_rhs(const FluidModel& model, double r, double rho, double m);

/// Exact rho = c/r^2, m = (alpha/2) r profile on the given grid.
StaticProfile singular_profile(const FluidModel& model, const RadialGrid& grid);

/// Classic fixed-step RK4 in (rho, m) from r0 to r1.
std::array<double, 2> rk4_reference(const FluidModel& model, double r0, double rho, double m,
                                    double r1, int steps);

/// Composite Simpson over [lo, hi] with `intervals` (rounded up to even)
/// uniform panels per segment, splitting at every point of `splits` in (lo, hi).
double reference_quadrature(const std::function<double(double)>& f, double lo, double hi,
                            std::span<const double> splits, int intervals);

/// Composite Simpson over sampled data on a possibly non-uniform grid, using
/// the exact integral of the parabola through each node pair-of-intervals.
/// Segments between consecutive `splits` (which must be nodes) are integrated
/// separately and each must contain an even number of intervals.
double reference_quadrature(std::span<const double> x, std::span<const double> f,
                            std::span<const double> splits);

/// Ordinary least-squares slope and intercept of y against x in closed form.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit simple_regression(std::span<const double> x, std::span<const double> y);

}  // namespace trapid::oracle
