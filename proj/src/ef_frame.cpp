#include "trapid/ef_frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trapid/errors.hpp"
#include "trapid/kernels.hpp"

namespace trapid {

namespace {

std::vector<double> integrate_v_shift(const RadialGrid& grid, std::span<const double> a,
                                      std::span<const double> b) {
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0 / (a[i] * b[i]);
  // The integrand tends to 1 at the center.
  const double first = 0.5 * grid.r_min() * (1.0 + f[0]);
  const CellQuadrature quad(grid.nodes());
  return prefix_sum(quad.cells(f), first);
}

double velocity_coefficient(const FluidModel& model, ConstraintForm form) {
  const double K = model.k2();
  return form == ConstraintForm::InitialData ? 2.0 * (1.0 - K) / (1.0 + K) : 2.0 * K;
}

}  // namespace

EfStaticFields to_ef(const StaticProfile& profile) {
  const std::size_t n = profile.size();
  EfStaticFields f;
  f.model = profile.model;
  f.source = std::make_shared<const StaticProfile>(profile);
  f.grid = profile.grid;
  f.a.resize(n);
  f.M.resize(n);
  f.V.resize(n);
  f.b.resize(n);
  kernels::active().static_ef(n, profile.grid.nodes().data(), profile.m.data(), profile.rho.data(),
                              f.a.data(), f.M.data(), f.V.data());
  for (std::size_t i = 0; i < n; ++i) f.b[i] = std::exp(profile.lambda[i] + profile.nu[i]);
  f.v_shift = integrate_v_shift(f.grid, f.a, f.b);
  return f;
}

EfStaticFields ef_from_arrays(const FluidModel& model, RadialGrid grid, std::vector<double> a,
                              std::vector<double> b, std::vector<double> M,
                              std::vector<double> V) {
  const std::size_t n = grid.size();
  if (a.size() != n || b.size() != n || M.size() != n || V.size() != n) {
    throw DomainError("ef_from_arrays: field length does not match the grid");
  }
  EfStaticFields f{model, nullptr, std::move(grid), std::move(a), std::move(b),
                   std::move(M), std::move(V), {}};
  f.v_shift = integrate_v_shift(f.grid, f.a, f.b);
  return f;
}

double center_cell(const EfStaticFields& fields, double weight_at_first_node) {
  const double r0 = fields.grid.r_min();
  return fields.b[0] * fields.M[0] * weight_at_first_node * r0 * r0 * r0 / 3.0;
}

ConstraintResidual static_constraint_residual(const EfStaticFields& fields, ConstraintForm form) {
  const std::size_t n = fields.size();
  const double cv = velocity_coefficient(fields.model, form);
  const double K = fields.model.k2();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = fields.grid[i];
    g[i] = fields.b[i] * fields.M[i] * (1.0 + cv * std::abs(fields.V[i])) * r * r;
  }
  const double first = center_cell(fields, 1.0 + cv * std::abs(fields.V[0]));
  const CellQuadrature quad(fields.grid.nodes());
  const std::vector<double> I = prefix_sum(quad.cells(g), first);

  ConstraintResidual out{form, std::vector<double>(n), 0.0, fields.grid[0]};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = fields.grid[i];
    const double rhs = 1.0 - 4.0 * std::numbers::pi * (1.0 + K) * I[i] / (r * fields.b[i]);
    out.residual[i] = fields.a[i] - rhs;
    if (std::abs(out.residual[i]) > out.max_abs) {
      out.max_abs = std::abs(out.residual[i]);
      out.max_abs_radius = r;
    }
  }
  return out;
}

IdentityDefects identity_defects(const EfStaticFields& f) {
  IdentityDefects d;
  if (!f.source) return d;
  const StaticProfile& p = *f.source;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double e2l = std::exp(-2.0 * p.lambda[i]);
    d.a_vs_lambda = std::max(d.a_vs_lambda, std::abs(f.a[i] - e2l) / e2l);
    const double bl = std::exp(p.lambda[i] + p.nu[i]);
    d.b_vs_lambda_nu = std::max(d.b_vs_lambda_nu, std::abs(f.b[i] - bl) / bl);
    d.v_plus_half_a = std::max(d.v_plus_half_a, std::abs(f.V[i] + 0.5 * f.a[i]));
    d.mass_density =
        std::max(d.mass_density, std::abs(f.M[i] * f.a[i] - p.rho[i]) / p.rho[i]);
  }
  return d;
}

MetricBlock metric_block(const EfStaticFields& f, std::size_t i) {
  return {-f.a[i] * f.b[i] * f.b[i], f.b[i], 0.0};
}

}  // namespace trapid
