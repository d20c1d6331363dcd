#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace trapid::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Tolerance {
  double rtol = 1e-10;
  double atol = 1e-13;
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Embedded Dormand-Prince 5(4) pair with local-extrapolation and a standard
/// PI-free step controller. `advance` lands exactly on the target abscissa.
template <std::size_t N>
class DormandPrince {
 public:
  using Rhs = std::function<State<N>(double, const State<N>&)>;

  DormandPrince(Rhs rhs, Tolerance tol) : rhs_(std::move(rhs)), tol_(tol) {}

  /// Integrates y from x to x_end. `h` is the suggested step on entry and the
  /// controller's next suggestion on exit. Throws NumericalError on step underflow.
  State<N> advance(double x, State<N> y, double x_end, double& h, StepStats& stats) const;

  const Tolerance& tolerance() const { return tol_; }

 private:
  Rhs rhs_;
  Tolerance tol_;
};

}  // namespace trapid::ode

#include "trapid/ode_impl.hpp"
