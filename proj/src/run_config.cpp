#include "trapid/run_config.hpp"

#include <cmath>
#include <sstream>

#include "trapid/errors.hpp"

namespace trapid {

namespace {

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw DomainError("not a number: '" + s + "'");
  return v;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    require(parts.size() == 3, "log-range must look like lo:hi:n, got '" + text + "'");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const double nd = parse_double(parts[2]);
    const auto n = static_cast<int>(nd);
    require(lo > 0.0 && hi > lo && n >= 2 && nd == n, "bad log-range '" + text + "'");
    for (int i = 0; i < n; ++i) {
      out.push_back(i == n - 1 ? hi : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (!p.empty()) out.push_back(parse_double(p));
  }
  require(!out.empty(), "empty number list");
  return out;
}

void RunConfig::validate() const {
  if (k) FluidModel::make(*k, rho0);
  for (double kv : k_list) FluidModel::make(kv, rho0);
  require(rho0 > 0.0, "rho0 must be positive");
  require(r_min > 0.0 && r_max > r_min, "need 0 < r-min < r-max");
  require(dr > 0.0 && points_per_decade > 0.0, "need dr > 0 and points-per-decade > 0");
  require(tolerance > 0.0 && tolerance < 1e-3, "tolerance must lie in (0, 1e-3)");
  require(window_lo > 0.0 && window_hi >= 10.0 * window_lo, "fit window must span a decade");
  require(workers >= 1, "workers must be >= 1");
  auto check_pert = [&](double rs, std::optional<double> d) {
    const double D = Delta_or_default(rs);
    const double dl = d ? *d : delta_or_default(rs);
    require(rs > 0.0, "r-star must be positive");
    require(D > 0.0 && D < rs, "Delta must lie in (0, r-star)");
    require(dl > 0.0 && dl < D && dl <= 0.5 * rs, "delta must lie in (0, Delta) and <= r-star/2");
    require(rs - dl > r_min && 1.5 * rs < r_max && rs + D < r_max,
            "perturbation band must sit inside (r-min, r-max) with room for 3 r-star/2");
  };
  check_pert(r_star, delta);
  for (double rs : r_star_list) {
    if (delta_list.empty()) check_pert(rs, delta);
    for (double d : delta_list) check_pert(rs, d);
  }
  if (h) require(*h > 0.0, "h must be positive");
  for (double hv : h_list) require(hv > 0.0, "h values must be positive");
}

FluidModel RunConfig::model() const {
  if (!k) throw DomainError("missing required option --k");
  return FluidModel::make(*k, rho0);
}

FluidModel RunConfig::model(double k_value) const { return FluidModel::make(k_value, rho0); }

SolveOptions RunConfig::solve_options() const {
  SolveOptions opt;
  opt.tolerance.rtol = tolerance;
  opt.tolerance.atol = 1e-3 * tolerance;
  return opt;
}

GridSpec RunConfig::grid_spec(const FluidModel& m, const std::vector<double>& breakpoints) const {
  const double L = m.length_scale();
  GridSpec spec;
  spec.r_min = r_min * L;
  spec.r_max = r_max * L;
  spec.dr = dr * L;
  spec.points_per_decade = points_per_decade;
  spec.breakpoints = breakpoints;
  return spec;
}

double RunConfig::Delta_or_default(double r_star_value) const {
  return Delta ? *Delta : 0.5 * r_star_value;
}

double RunConfig::delta_or_default(double r_star_value) const {
  return delta ? *delta : Delta_or_default(r_star_value) / 10.0;
}

}  // namespace trapid
