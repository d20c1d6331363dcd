#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace trapid {

struct LinearFit {
  /// Coefficients in the order of the design columns.
  std::vector<double> coef;
  /// Standard errors from the residual variance (0 when dof == 0).
  std::vector<double> std_error;
  double residual_rms = 0.0;
  std::size_t dof = 0;
};

/// Least squares y ~ sum_j coef_j * columns[j]. Throws DomainError when the
/// design is rank deficient (collinear or constant columns).
LinearFit least_squares(const std::vector<std::vector<double>>& columns, std::span<const double> y);

/// log y = intercept + slope * log x; coef = {intercept, slope}. Requires x, y > 0.
LinearFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Two-sided Student-t critical value for the given confidence level.
double t_critical(std::size_t dof, double confidence = 0.95);

}  // namespace trapid
