#include "trapid/static_star.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trapid/errors.hpp"
#include "trapid/oracle.hpp"

namespace trapid {

namespace {

constexpr double kPi = std::numbers::pi;

// State is (log rho, w = 2m/r); both stay O(1) from the center to the tail.
using Y = ode::State<2>;

Y rhs_radius(double K, double r, const Y& y) {
  const double rho = std::exp(y[0]);
  const double w = y[1];
  if (!(w < 1.0)) return {std::nan(""), std::nan("")};
  const double s = r * r * rho;
  return {-(1.0 + K) * (0.5 * w + 4.0 * kPi * K * s) / (K * r * (1.0 - w)),
          8.0 * kPi * r * rho - w / r};
}

Y rhs_log_radius(double K, double x, const Y& y) {
  const double r = std::exp(x);
  const double rho = std::exp(y[0]);
  const double w = y[1];
  if (!(w < 1.0)) return {std::nan(""), std::nan("")};
  const double s = r * r * rho;
  return {-(1.0 + K) * (0.5 * w + 4.0 * kPi * K * s) / (K * (1.0 - w)), 8.0 * kPi * s - w};
}

class Marcher {
 public:
  Marcher(const FluidModel& model, const SolveOptions& opt)
      : model_(model),
        r_switch_(opt.log_switch_in_L * model.length_scale()),
        in_r_([K = model.k2()](double r, const Y& y) { return rhs_radius(K, r, y); },
              opt.tolerance),
        in_x_([K = model.k2()](double x, const Y& y) { return rhs_log_radius(K, x, y); },
              opt.tolerance) {}

  // Carries y from r0 to r1; h is measured in r.
  Y step(double r0, Y y, double r1, double& h, ode::StepStats& stats) const {
    if (r0 < r_switch_) {
      const double r_mid = std::min(r1, r_switch_);
      y = in_r_.advance(r0, y, r_mid, h, stats);
      r0 = r_mid;
    }
    if (r0 < r1) {
      double hx = h / r0;
      y = in_x_.advance(std::log(r0), y, std::log(r1), hx, stats);
      h = hx * r1;
    }
    return y;
  }

 private:
  FluidModel model_;
  double r_switch_;
  ode::DormandPrince<2> in_r_;
  ode::DormandPrince<2> in_x_;
};

struct NodeValues {
  double rho, m, lambda, nu;
};

NodeValues node_values(const FluidModel& model, double r, const Y& y) {
  const double w = y[1];
  if (!(w < 1.0) || !std::isfinite(y[0])) {
    throw NumericalError("static solve: 1 - 2m/r left (0, 1] at r = " + std::to_string(r));
  }
  return {std::exp(y[0]), 0.5 * w * r, -0.5 * std::log1p(-w),
          model.nu_exponent() * (std::log(model.rho0) - y[0])};
}

void push(StaticProfile& p, const NodeValues& v) {
  p.rho.push_back(v.rho);
  p.m.push_back(v.m);
  p.lambda.push_back(v.lambda);
  p.nu.push_back(v.nu);
}

Y state_at(const StaticProfile& p, std::size_t i) {
  return {std::log(p.rho[i]), 2.0 * p.m[i] / p.grid[i]};
}

SolveOptions options_of(const StaticProfile& p) {
  SolveOptions opt;
  opt.tolerance = p.tolerance;
  return opt;
}

}  // namespace

GridSpec default_grid_spec(const FluidModel& model) {
  const double L = model.length_scale();
  GridSpec spec;
  spec.r_min = 1e-6 * L;
  spec.r_max = 1e3 * L;
  spec.dr = 0.01 * L;
  spec.points_per_decade = 200.0;
  return spec;
}

StaticProfile solve_static(const FluidModel& model, const GridSpec& spec,
                           const SolveOptions& options) {
  return solve_static(model, make_grid(spec), options);
}

StaticProfile solve_static(const FluidModel& model, const RadialGrid& grid,
                           const SolveOptions& options) {
  const FluidModel checked = FluidModel::make(model.k, model.rho0);
  StaticProfile p{checked, grid, {}, {}, {}, {}, options.tolerance, {}};
  const std::size_t n = grid.size();
  p.rho.reserve(n);
  p.m.reserve(n);
  p.lambda.reserve(n);
  p.nu.reserve(n);

  const oracle::CenterSeries series = oracle::center_series(checked);
  const double r0 = grid.r_min();
  if (series.rho(r0) <= 0.5 * checked.rho0) {
    throw DomainError("r_min too large for the center series start");
  }
  Y y{std::log(series.rho(r0)), 2.0 * series.m(r0) / r0};
  push(p, node_values(checked, r0, y));

  const Marcher march(checked, options);
  double h = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (h <= 0.0) h = grid[i] - grid[i - 1];
    y = march.step(grid[i - 1], y, grid[i], h, p.stats);
    push(p, node_values(checked, grid[i], y));
  }
  return p;
}

StaticProfile insert_nodes(const StaticProfile& profile, std::span<const double> radii) {
  std::vector<double> wanted;
  for (double r : radii) {
    if (!(r > profile.grid.r_min() && r <= profile.grid.r_max())) {
      throw DomainError("insert_nodes: radius " + std::to_string(r) + " outside the profile grid");
    }
    if (profile.grid.find(r) == RadialGrid::npos) wanted.push_back(r);
  }
  if (wanted.empty()) return profile;
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  const Marcher march(profile.model, options_of(profile));
  StaticProfile out{profile.model, RadialGrid{}, {}, {}, {}, {}, profile.tolerance, profile.stats};
  std::vector<double> nodes;
  nodes.reserve(profile.size() + wanted.size());

  std::size_t next = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    nodes.push_back(profile.grid[i]);
    push(out, {profile.rho[i], profile.m[i], profile.lambda[i], profile.nu[i]});
    const double upper = i + 1 < profile.size() ? profile.grid[i + 1] : profile.grid[i];
    while (next < wanted.size() && wanted[next] < upper) {
      double h = 0.25 * (wanted[next] - profile.grid[i]);
      const Y y = march.step(profile.grid[i], state_at(profile, i), wanted[next], h, out.stats);
      nodes.push_back(wanted[next]);
      push(out, node_values(profile.model, wanted[next], y));
      ++next;
    }
  }
  out.grid = RadialGrid(std::move(nodes));
  return out;
}

ProfileDiagnostics diagnose(const StaticProfile& p) {
  ProfileDiagnostics d;
  const double floor = 1.0 - p.model.alpha();
  d.a_min = p.a(0);
  d.a_min_radius = p.grid[0];
  d.a_monotone = true;
  d.rho_decreasing = true;
  d.b_increasing = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = p.a(i);
    if (a < d.a_min) {
      d.a_min = a;
      d.a_min_radius = p.grid[i];
    }
    if (d.first_undershoot_radius == 0.0 && a < floor) d.first_undershoot_radius = p.grid[i];
    if (i > 0) {
      d.a_monotone = d.a_monotone && a <= p.a(i - 1);
      d.rho_decreasing = d.rho_decreasing && p.rho[i] < p.rho[i - 1];
      d.b_increasing =
          d.b_increasing && p.lambda[i] + p.nu[i] > p.lambda[i - 1] + p.nu[i - 1];
    }
  }
  return d;
}

BConstantCandidates b_constant_candidates(const FluidModel& model) {
  const double alpha = model.alpha();
  const double c = singular_density_coefficient(model.k);
  const double e = model.nu_exponent();
  const double tail = 1.0 / std::sqrt(1.0 - alpha);
  return {std::pow(model.rho0 / c, e) * tail,
          std::pow(2.0 * model.rho0 / (kPi * alpha), e) * tail};
}

}  // namespace trapid
