#pragma once

namespace trapid {

/// Squared-sound-speed closure p = k^2 rho with central density rho0 (G = c = 1).
struct FluidModel {
  double k = 0.0;
  double rho0 = 1.0;

  /// Validates 0 < k < 1 and rho0 > 0; throws DomainError otherwise.
  static FluidModel make(double k, double rho0);

  double k2() const { return k * k; }
  /// Conical deficit angle of the asymptotic geometry.
  double alpha() const;
  /// Natural length L = (4 pi rho0)^{-1/2}.
  double length_scale() const;
  /// Exponent k^2/(1+k^2) relating e^nu to rho0/rho.
  double nu_exponent() const { return k2() / (1.0 + k2()); }
};

/// alpha(k) = 4k^2 / ((1+k^2)^2 + 4k^2), defined for 0 <= k <= 1.
double deficit_angle(double k);

/// Coefficient c of the exact scale-invariant solution rho = c / r^2.
/// Satisfies 8 pi c = alpha(k).
double singular_density_coefficient(double k);

}  // namespace trapid
