#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "trapid/ef_frame.hpp"
#include "trapid/fluid_model.hpp"
#include "trapid/radial_grid.hpp"

namespace trapid {

/// Velocity kick of relative size 1/h on the closed band [r_star - delta, r_star + delta].
/// h = +infinity is accepted and means "no perturbation".
struct Perturbation {
  double r_star = 0.0;
  double delta = 0.0;
  double h = 0.0;
  /// Width of the annulus (r_star + delta, r_star + Delta] used for the C3 bound.
  double Delta = 0.0;

  /// Enforces 0 < delta < Delta < r_star, delta <= r_star/2 and h > 0.
  /// A NaN Delta defaults to r_star/2.
  static Perturbation make(double r_star, double delta, double h,
                           double Delta = std::numeric_limits<double>::quiet_NaN());

  double band_lo() const { return r_star - delta; }
  double band_hi() const { return r_star + delta; }
  double annulus_hi() const { return r_star + Delta; }
  /// (2h + 1)/h^2, the band factor in the expanded time derivative; 0 for h = inf.
  double band_factor() const;
};

/// Radii that must be grid nodes before the data can be built.
std::vector<double> required_nodes(const Perturbation& pert);

struct InitialDataSet {
  FluidModel model;
  Perturbation pert;
  /// Static fields on the data grid (band edges and r_star + Delta are nodes).
  std::shared_ptr<const EfStaticFields> fields;
  RadialGrid grid;

  std::vector<double> M0;
  std::vector<double> V0;
  std::vector<double> a0;
  std::vector<double> b0;
  /// a0 - a_static, from the band integral alone.
  std::vector<double> a1;
  /// Direct time derivative 2 pi r b M (a0^2 - 4 V0^2).
  std::vector<double> av;
  /// Expanded form 2 pi r b M (a1 (a0 + a) - chi a^2 (2h+1)/h^2).
  std::vector<double> av_expanded;
  /// Closed indicator of the band, 1.0 or 0.0.
  std::vector<double> chi;
  /// a0 from a single quadrature of the full perturbed mass integral (diagnostic).
  std::vector<double> a0_quadrature;

  std::size_t band_lo_index = 0;
  std::size_t band_hi_index = 0;
  std::size_t annulus_hi_index = 0;

  std::size_t size() const { return grid.size(); }
};

/// Returns fields whose grid contains every radius in required_nodes(pert),
/// re-integrating the source profile where nodes are missing.
EfStaticFields align_fields(const EfStaticFields& fields, const Perturbation& pert);

/// Builds (M0, V0, a0, b0) and both time-derivative forms. Throws DomainError
/// if the band or annulus leaves the grid.
InitialDataSet build_initial_data(const EfStaticFields& fields, const Perturbation& pert);

struct AvGrids {
  std::vector<double> direct;
  std::vector<double> expanded;
};
AvGrids compute_av(const InitialDataSet& data, const EfStaticFields& fields);

struct NoTrappedVerdict {
  bool ok = false;
  double min_a0 = 0.0;
  double witness_radius = 0.0;
  /// Lower bound on a0 beyond the last node.
  double tail_bound = 0.0;
};

/// True iff a0 > 0 on every node and the tail bound is positive. Beyond the
/// grid a1 decays like 1/(r b), so a0 >= a_floor - |a1(r_max)| where a_floor
/// is min(1 - alpha, smallest static a on the final decade of the grid).
NoTrappedVerdict check_no_trapped(const InitialDataSet& data);

struct TheoremConstants {
  /// Step-1 threshold constant; the hypothesis is delta/h <= 1/C1.
  double C1 = 0.0;
  /// 2 pi (r_star - delta) rho(r_star + delta) (1 - alpha).
  double C4_prefactor = 0.0;
  double b_at_three_halves = 0.0;
  double rho_at_band_hi = 0.0;
  /// -C4_prefactor (2h+1)/h^2.
  double band_bound(double h) const;
};

/// Throws DomainError if the grid does not reach 3 r_star / 2.
TheoremConstants theorem_constants(const EfStaticFields& fields, const Perturbation& pert);

struct ClauseResult {
  std::string name;
  bool ok = false;
  /// First offending radius when the clause fails, else the radius of the tightest margin.
  double witness_radius = 0.0;
  std::size_t violations = 0;
  /// False when the clause is vacuous for this data (h = inf makes av vanish).
  bool applicable = true;
};

struct TheoremReport {
  FluidModel model;
  Perturbation pert;
  TheoremConstants constants;
  double delta_over_h = 0.0;
  bool hypothesis_met = false;
  double min_a0 = 0.0;
  double min_a0_radius = 0.0;
  double tail_bound = 0.0;
  /// -C4_prefactor (2h+1)/h^2 and the weaker -C4_prefactor/h^2.
  double band_bound = 0.0;
  double c4_bound = 0.0;
  /// Extremes of av on the band and supremum on (r_star + delta, r_star + Delta].
  double band_sup_av = 0.0;
  double band_min_av = 0.0;
  double annulus_sup_av = 0.0;
  double max_abs_a1 = 0.0;
  double forms_max_rel_gap = 0.0;
  std::vector<ClauseResult> clauses;

  bool all_ok() const;
  const ClauseResult* clause(const std::string& name) const;
};

/// Relative agreement required between the two time-derivative forms.
inline constexpr double kFormsRelTol = 1e-8;

TheoremReport verify_theorem(const InitialDataSet& data, const EfStaticFields& fields,
                             const Perturbation& pert);

/// One sweep sample for the empirical C2/C3 scaling fits.
struct ScalingPoint {
  double delta = 0.0;
  double h = 0.0;
  /// |sup av| on the band and on the annulus (the bound-relevant magnitudes).
  double band_sup_abs = 0.0;
  double annulus_sup_abs = 0.0;
};

struct ExponentFit {
  double exp_delta = 0.0;
  double exp_h = 0.0;
  double log_prefactor = 0.0;
  double ci_delta_lo = 0.0, ci_delta_hi = 0.0;
  double ci_h_lo = 0.0, ci_h_hi = 0.0;
  double residual_rms = 0.0;
  std::size_t points = 0;
};

struct ScalingFits {
  ExponentFit band;
  ExponentFit annulus;
};

/// log |sup av| = c + p log delta + q log h over >= 8 points. Throws
/// DomainError on fewer points or a degenerate (collinear) design.
ExponentFit fit_exponents(const std::vector<double>& delta, const std::vector<double>& h,
                          const std::vector<double>& magnitude);
ScalingFits fit_c2_c3(const std::vector<ScalingPoint>& points);

struct CriticalRatio {
  double h_critical = 0.0;
  double ratio_critical = 0.0;
  double ratio_threshold = 0.0;
  bool conservative = false;
  int iterations = 0;
};

/// Bisects h at fixed delta for min a0 = 0 (grid plus tail bound). The
/// threshold ratio is 1/C1; conservative means critical ratio >= threshold.
CriticalRatio critical_ratio(const EfStaticFields& fields, double r_star, double delta,
                             double Delta = std::numeric_limits<double>::quiet_NaN());

}  // namespace trapid
