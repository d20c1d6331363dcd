#include "trapid/fluid_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "trapid/errors.hpp"

namespace trapid {

FluidModel FluidModel::make(double k, double rho0) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError("sound speed k must lie in (0, 1), got " + std::to_string(k));
  }
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) {
    throw DomainError("central density rho0 must be positive, got " + std::to_string(rho0));
  }
  return FluidModel{k, rho0};
}

double FluidModel::alpha() const { return deficit_angle(k); }

double FluidModel::length_scale() const { return 1.0 / std::sqrt(4.0 * std::numbers::pi * rho0); }

double deficit_angle(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw DomainError("deficit_angle: k must lie in [0, 1], got " + std::to_string(k));
  }
  const double k2 = k * k;
  const double q = 1.0 + k2;
  return 4.0 * k2 / (q * q + 4.0 * k2);
}

double singular_density_coefficient(double k) {
  if (!(k > 0.0 && k <= 1.0)) {
    throw DomainError("singular_density_coefficient: k must lie in (0, 1], got " +
                      std::to_string(k));
  }
  const double k2 = k * k;
  const double q = 1.0 + k2;
  return k2 / (2.0 * std::numbers::pi * (q * q + 4.0 * k2));
}

}  // namespace trapid
