#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trapid/fluid_model.hpp"
#include "trapid/ode.hpp"
#include "trapid/radial_grid.hpp"

namespace trapid {

/// Regular static solution sampled on a radial grid.
///
/// nu is normalized so that nu(0) = 0, i.e. e^nu = (rho0/rho)^{k^2/(1+k^2)};
/// lambda = -log(1 - 2m/r)/2.
struct StaticProfile {
  FluidModel model;
  RadialGrid grid;
  std::vector<double> rho;
  std::vector<double> m;
  std::vector<double> lambda;
  std::vector<double> nu;

  ode::Tolerance tolerance;
  ode::StepStats stats;

  std::size_t size() const { return grid.size(); }
  double a(std::size_t i) const { return 1.0 - 2.0 * m[i] / grid[i]; }
};

struct SolveOptions {
  ode::Tolerance tolerance{1e-10, 1e-13};
  /// Switch from r to log r as independent variable, in units of L.
  double log_switch_in_L = 10.0;
};

/// Default node recipe: r in [1e-6 L, 1e3 L], dr = 0.01 L, 200 points per decade.
GridSpec default_grid_spec(const FluidModel& model);

/// Integrates the static Tolman-Oppenheimer-Volkoff system for p = k^2 rho
/// outward from the center-series start at grid.r_min, landing on every node.
/// Throws NumericalError if the integrator collapses or 1 - 2m/r leaves (0, 1].
StaticProfile solve_static(const FluidModel& model, const GridSpec& spec,
                           const SolveOptions& options = {});
StaticProfile solve_static(const FluidModel& model, const RadialGrid& grid,
                           const SolveOptions& options = {});

/// Returns a copy with extra nodes, each obtained by re-integrating from the
/// nearest node below with the profile's own tolerance. Radii already present
/// are ignored.
StaticProfile insert_nodes(const StaticProfile& profile, std::span<const double> radii);

/// Profile shape facts that are measured rather than assumed.
struct ProfileDiagnostics {
  double a_min = 0.0;
  double a_min_radius = 0.0;
  bool a_monotone = false;
  /// First node where a < 1 - alpha; 0 if none.
  double first_undershoot_radius = 0.0;
  bool rho_decreasing = false;
  bool b_increasing = false;
};

ProfileDiagnostics diagnose(const StaticProfile& profile);

/// Log-window estimates of the large-r behaviour.
struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct AsymptoticsReport {
  /// Log-window average of a = 1 - 2m/r.
  double a_limit_est = 0.0;
  /// Least-squares slope of log b against log r.
  double b_exponent_est = 0.0;
  /// Log-window average of r^2 rho.
  double rho_coeff_est = 0.0;
  /// Log-window geometric mean of r^{-2k^2/(1+k^2)} b.
  double b_constant_est = 0.0;
  FitWindow window;
  std::size_t samples = 0;

  struct Residuals {
    double a_limit = 0.0;
    double b_exponent = 0.0;
    double rho_coeff = 0.0;
    double b_constant = 0.0;
  } residuals;
};

/// Requires hi/lo >= 10, the window inside the grid and at least 8 nodes in it.
AsymptoticsReport fit_asymptotics(const StaticProfile& profile, FitWindow window);

/// Candidate limits of r^{-2k^2/(1+k^2)} b for comparison with b_constant_est.
struct BConstantCandidates {
  /// (rho0/c)^{k^2/(1+k^2)} (1-alpha)^{-1/2}, implied by the TOV conventions used here.
  double tov = 0.0;
  /// (2 rho0/(pi alpha))^{k^2/(1+k^2)} (1-alpha)^{-1/2}, the alternative density normalization.
  double alternate = 0.0;
};
BConstantCandidates b_constant_candidates(const FluidModel& model);

}  // namespace trapid
