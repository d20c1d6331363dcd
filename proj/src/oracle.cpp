#include "trapid/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trapid/errors.hpp"

namespace trapid::oracle {

namespace {
constexpr double kPi = std::numbers::pi;
}

double CenterSeries::rho(double r) const {
  const double r2 = r * r;
  return rho0 + r2 * (rho2 + r2 * rho4);
}

double CenterSeries::drho(double r) const { return r * (2.0 * rho2 + 4.0 * rho4 * r * r); }

double CenterSeries::m(double r) const {
  const double r2 = r * r;
  return r * r2 * (m3 + r2 * (m5 + r2 * m7));
}

double CenterSeries::relative_residual(const FluidModel& model, double r) const {
  const auto f = tov_rhs(model, r, rho(r), m(r));
  return std::abs(drho(r) - f[0]) / std::abs(2.0 * rho2 * r);
}

CenterSeries center_series(const FluidModel& model) {
  const double K = model.k2();
  if (!(K > 0.0)) throw DomainError("center series degenerates for k = 0");
  const double p0 = model.rho0;
  CenterSeries s;
  s.rho0 = p0;
  s.rho2 = -(2.0 * kPi / (3.0 * K)) * (1.0 + K) * (1.0 + 3.0 * K) * p0 * p0;
  s.rho4 = 4.0 * kPi * kPi * p0 * p0 * p0 * (1.0 + K) * (1.0 + 3.0 * K) *
           (15.0 * K * K + 9.0 * K + 4.0) / (45.0 * K * K);
  s.m3 = 4.0 * kPi / 3.0 * p0;
  s.m5 = 4.0 * kPi / 5.0 * s.rho2;
  s.m7 = 4.0 * kPi / 7.0 * s.rho4;
  return s;
}

std::array<double, 2> tov_rhs(const FluidModel& model, double r, double rho, double m) {
  const double K = model.k2();
  const double p = K * rho;
  const double dp = -(rho + p) * (m + 4.0 * kPi * r * r * r * p) / (r * (r - 2.0 * m));
  return {dp / K, 4.0 * kPi * r * r * rho};
}

StaticProfile singular_profile(const FluidModel& model, const RadialGrid& grid) {
  const double c = singular_density_coefficient(model.k);
  const double alpha = model.alpha();
  StaticProfile p{model, grid, {}, {}, {}, {}, {0.0, 0.0}, {}};
  for (double r : grid.nodes()) {
    p.rho.push_back(c / (r * r));
    p.m.push_back(0.5 * alpha * r);
    p.lambda.push_back(-0.5 * std::log1p(-alpha));
    p.nu.push_back(model.nu_exponent() * std::log(model.rho0 * r * r / c));
  }
  return p;
}

std::array<double, 2> rk4_reference(const FluidModel& model, double r0, double rho, double m,
                                    double r1, int steps) {
  const double h = (r1 - r0) / steps;
  std::array<double, 2> y{rho, m};
  auto add = [](const std::array<double, 2>& a, const std::array<double, 2>& b, double s) {
    return std::array<double, 2>{a[0] + s * b[0], a[1] + s * b[1]};
  };
  for (int i = 0; i < steps; ++i) {
    const double r = r0 + i * h;
    const auto k1 = tov_rhs(model, r, y[0], y[1]);
    const auto y2 = add(y, k1, 0.5 * h);
    const auto k2 = tov_rhs(model, r + 0.5 * h, y2[0], y2[1]);
    const auto y3 = add(y, k2, 0.5 * h);
    const auto k3 = tov_rhs(model, r + 0.5 * h, y3[0], y3[1]);
    const auto y4 = add(y, k3, h);
    const auto k4 = tov_rhs(model, r + h, y4[0], y4[1]);
    for (int j = 0; j < 2; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return y;
}

double reference_quadrature(const std::function<double(double)>& f, double lo, double hi,
                            std::span<const double> splits, int intervals) {
  std::vector<double> cuts{lo};
  for (double s : splits) {
    if (s > lo && s < hi) cuts.push_back(s);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(hi);
  const int n = intervals + (intervals % 2);
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double a = cuts[j];
    const double h = (cuts[j + 1] - a) / n;
    double acc = f(a) + f(cuts[j + 1]);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    total += acc * h / 3.0;
  }
  return total;
}

double reference_quadrature(std::span<const double> x, std::span<const double> f,
                            std::span<const double> splits) {
  if (x.size() != f.size() || x.size() < 3) throw DomainError("reference_quadrature: bad samples");
  std::vector<std::size_t> cut{0};
  for (double s : splits) {
    auto it = std::find(x.begin(), x.end(), s);
    if (it == x.end()) throw DomainError("reference_quadrature: split is not a sample node");
    const auto idx = static_cast<std::size_t>(it - x.begin());
    if (idx > 0 && idx + 1 < x.size()) cut.push_back(idx);
  }
  std::sort(cut.begin(), cut.end());
  cut.push_back(x.size() - 1);

  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cut.size(); ++j) {
    if ((cut[j + 1] - cut[j]) % 2 != 0) {
      throw DomainError("reference_quadrature: segment needs an even interval count");
    }
    for (std::size_t i = cut[j]; i < cut[j + 1]; i += 2) {
      const double h0 = x[i + 1] - x[i];
      const double h1 = x[i + 2] - x[i + 1];
      const double s = h0 + h1;
      total += s / 6.0 *
               ((2.0 - h1 / h0) * f[i] + s * s / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
    }
  }
  return total;
}

LineFit simple_regression(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace trapid::oracle
