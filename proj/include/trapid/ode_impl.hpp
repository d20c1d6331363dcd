#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "trapid/errors.hpp"

namespace trapid::ode {

namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b - b*, the difference between the 5th- and 4th-order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

template <std::size_t N>
State<N> DormandPrince<N>::advance(double x, State<N> y, double x_end, double& h,
                                   StepStats& stats) const {
  using namespace dp;
  if (x_end == x) return y;
  const double dir = x_end > x ? 1.0 : -1.0;
  h = std::abs(h);
  if (!(h > 0.0)) h = std::abs(x_end - x) * 1e-3;

  auto combine = [&](std::initializer_list<std::pair<double, const State<N>*>> terms,
                     double step) {
    State<N> out = y;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [w, k] : terms) acc += w * (*k)[i];
      out[i] += step * acc;
    }
    return out;
  };

  State<N> k1 = rhs_(x, y);
  while (dir * (x_end - x) > 0.0) {
    bool last = false;
    double step = dir * h;
    if (dir * (x + step - x_end) >= 0.0) {
      step = x_end - x;
      last = true;
    }
    if (!last && std::abs(step) < 1e-14 * std::max(std::abs(x), 1e-300)) {
      throw NumericalError("ODE step size underflow at x = " + std::to_string(x));
    }

    const State<N> k2 = rhs_(x + c2 * step, combine({{a21, &k1}}, step));
    const State<N> k3 = rhs_(x + c3 * step, combine({{a31, &k1}, {a32, &k2}}, step));
    const State<N> k4 =
        rhs_(x + c4 * step, combine({{a41, &k1}, {a42, &k2}, {a43, &k3}}, step));
    const State<N> k5 = rhs_(x + c5 * step,
                             combine({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, step));
    const State<N> k6 = rhs_(
        x + step, combine({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, step));
    const State<N> y_new =
        combine({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, step);
    const double x_new = last ? x_end : x + step;
    const State<N> k7 = rhs_(x_new, y_new);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
      const double sc = tol_.atol + tol_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double r = e / sc;
      err += r * r;
      finite = finite && std::isfinite(y_new[i]);
    }
    err = std::sqrt(err / static_cast<double>(N));
    if (!finite) err = 1e10;

    if (err <= 1.0) {
      ++stats.accepted;
      x = x_new;
      y = y_new;
      k1 = k7;
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // A clipped final step says nothing about the natural step length.
      if (!last) h = std::abs(step) * fac;
    } else {
      ++stats.rejected;
      h = std::abs(step) * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  return y;
}

}  // namespace trapid::ode
