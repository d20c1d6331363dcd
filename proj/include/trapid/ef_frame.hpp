#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "trapid/fluid_model.hpp"
#include "trapid/quadrature.hpp"
#include "trapid/radial_grid.hpp"
#include "trapid/static_star.hpp"

namespace trapid {

/// Static slice in generalized Eddington-Finkelstein form
///   g = -a b^2 dv^2 + 2 b dv dr + r^2 dOmega^2
/// with the normalized mass M and velocity V of the fluid.
struct EfStaticFields {
  FluidModel model;
  /// Profile the fields were derived from; null for manufactured fields.
  std::shared_ptr<const StaticProfile> source;
  RadialGrid grid;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> M;
  std::vector<double> V;
  /// v - t = integral_0^r e^{lambda - nu} ds.
  std::vector<double> v_shift;

  std::size_t size() const { return grid.size(); }
  double rho(std::size_t i) const { return M[i] * a[i]; }
};

EfStaticFields to_ef(const StaticProfile& profile);

/// Fields from raw arrays (test data, vacuum, manufactured solutions).
/// v_shift is integrated from 1/(a b), which equals e^{lambda - nu}.
EfStaticFields ef_from_arrays(const FluidModel& model, RadialGrid grid, std::vector<double> a,
                              std::vector<double> b, std::vector<double> M, std::vector<double> V);

/// Velocity weight inside the mass integral for a(r).
enum class ConstraintForm {
  /// 1 + 2 (1-k^2)/(1+k^2) |V|, the weight used to build perturbed data.
  InitialData,
  /// 1 + 2 k^2 |V|.
  VelocityWeighted,
};

struct ConstraintResidual {
  ConstraintForm form;
  /// a(r) minus 1 - 4 pi (1+k^2)/(r b(r)) integral_0^r b M w(V) s^2 ds, per node.
  std::vector<double> residual;
  double max_abs = 0.0;
  double max_abs_radius = 0.0;
};

ConstraintResidual static_constraint_residual(const EfStaticFields& fields,
                                              ConstraintForm form = ConstraintForm::InitialData);

/// Integral over [0, r_min] of b M w(V) s^2, from the node-0 values (the
/// integrand is s^2 times a smooth function equal to its center value to O(s^2)).
double center_cell(const EfStaticFields& fields, double weight_at_first_node);

/// Largest node-wise defects of the exact algebraic identities
/// a = e^{-2 lambda}, b = e^{lambda + nu}, V = -a/2, M a = rho.
struct IdentityDefects {
  double a_vs_lambda = 0.0;
  double b_vs_lambda_nu = 0.0;
  double v_plus_half_a = 0.0;
  double mass_density = 0.0;
};
IdentityDefects identity_defects(const EfStaticFields& fields);

/// (v, r) block of the metric at one node.
struct MetricBlock {
  double g_vv;
  double g_vr;
  double g_rr;
  double det() const { return g_vv * g_rr - g_vr * g_vr; }
};
MetricBlock metric_block(const EfStaticFields& fields, std::size_t i);

}  // namespace trapid
