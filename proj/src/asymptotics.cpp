#include <cmath>
#include <string>

#include "trapid/errors.hpp"
#include "trapid/regression.hpp"
#include "trapid/static_star.hpp"

namespace trapid {

namespace {

struct LogAverage {
  double mean = 0.0;
  double rms = 0.0;
};

// Trapezoidal mean over log r; point samples would alias the tail oscillation.
LogAverage log_window_average(std::span<const double> lr, std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t i = 1; i < lr.size(); ++i) acc += 0.5 * (v[i] + v[i - 1]) * (lr[i] - lr[i - 1]);
  const double mean = acc / (lr.back() - lr.front());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size()))};
}

}  // namespace

AsymptoticsReport fit_asymptotics(const StaticProfile& profile, FitWindow window) {
  if (!(window.lo > 0.0) || !(window.hi >= 10.0 * window.lo * (1.0 - 1e-12))) {
    throw DomainError("fit_asymptotics: window must span at least one decade");
  }
  if (window.lo < profile.grid.r_min() || window.hi > profile.grid.r_max() * (1.0 + 1e-12)) {
    throw DomainError("fit_asymptotics: window [" + std::to_string(window.lo) + ", " +
                      std::to_string(window.hi) + "] outside the profile grid");
  }

  std::vector<double> lr, a, rho_coeff, log_b, log_b_scaled;
  const double p_exp = 2.0 * profile.model.nu_exponent();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double r = profile.grid[i];
    if (r < window.lo || r > window.hi * (1.0 + 1e-12)) continue;
    const double l = std::log(r);
    lr.push_back(l);
    a.push_back(profile.a(i));
    rho_coeff.push_back(r * r * profile.rho[i]);
    log_b.push_back(profile.lambda[i] + profile.nu[i]);
    log_b_scaled.push_back(log_b.back() - p_exp * l);
  }
  if (lr.size() < 8) throw DomainError("fit_asymptotics: fewer than 8 nodes in the window");

  AsymptoticsReport rep;
  rep.window = window;
  rep.samples = lr.size();

  const auto a_avg = log_window_average(lr, a);
  rep.a_limit_est = a_avg.mean;
  rep.residuals.a_limit = a_avg.rms;

  const auto c_avg = log_window_average(lr, rho_coeff);
  rep.rho_coeff_est = c_avg.mean;
  rep.residuals.rho_coeff = c_avg.rms;

  std::vector<double> ones(lr.size(), 1.0);
  const LinearFit fit = least_squares({ones, lr}, log_b);
  rep.b_exponent_est = fit.coef[1];
  rep.residuals.b_exponent = fit.residual_rms;

  const auto bc = log_window_average(lr, log_b_scaled);
  rep.b_constant_est = std::exp(bc.mean);
  rep.residuals.b_constant = bc.rms;
  return rep;
}

}  // namespace trapid
