#include <cmath>

#include "trapid/errors.hpp"
#include "trapid/regression.hpp"
#include "trapid/trap_idata.hpp"

namespace trapid {

ExponentFit fit_exponents(const std::vector<double>& delta, const std::vector<double>& h,
                          const std::vector<double>& magnitude) {
  const std::size_t n = magnitude.size();
  if (n < 8 || delta.size() != n || h.size() != n) {
    throw DomainError("fit_exponents: need at least 8 sweep points");
  }
  std::vector<double> ones(n, 1.0), ld(n), lh(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(delta[i] > 0.0 && h[i] > 0.0 && magnitude[i] > 0.0)) {
      throw DomainError("fit_exponents: needs positive delta, h and magnitude");
    }
    ld[i] = std::log(delta[i]);
    lh[i] = std::log(h[i]);
    ly[i] = std::log(magnitude[i]);
  }
  const LinearFit fit = least_squares({ones, ld, lh}, ly);
  const double t = t_critical(fit.dof);
  ExponentFit e;
  e.log_prefactor = fit.coef[0];
  e.exp_delta = fit.coef[1];
  e.exp_h = fit.coef[2];
  e.ci_delta_lo = e.exp_delta - t * fit.std_error[1];
  e.ci_delta_hi = e.exp_delta + t * fit.std_error[1];
  e.ci_h_lo = e.exp_h - t * fit.std_error[2];
  e.ci_h_hi = e.exp_h + t * fit.std_error[2];
  e.residual_rms = fit.residual_rms;
  e.points = n;
  return e;
}

ScalingFits fit_c2_c3(const std::vector<ScalingPoint>& points) {
  std::vector<double> d, h, band, annulus;
  for (const auto& p : points) {
    d.push_back(p.delta);
    h.push_back(p.h);
    band.push_back(p.band_sup_abs);
    annulus.push_back(p.annulus_sup_abs);
  }
  return {fit_exponents(d, h, band), fit_exponents(d, h, annulus)};
}

}  // namespace trapid
