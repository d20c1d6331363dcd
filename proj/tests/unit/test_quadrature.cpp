#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "trapid/errors.hpp"
#include "trapid/oracle.hpp"
#include "trapid/quadrature.hpp"
#include "trapid/radial_grid.hpp"

using namespace trapid;

namespace {

std::vector<double> random_nodes(test::Gen& g, std::size_t n, double lo, double hi) {
  auto v = g.vec(n - 2, lo, hi);
  v.push_back(lo);
  v.push_back(hi);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> sample(const std::vector<double>& x, double (*f)(double)) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return y;
}

double cubic(double x) { return 2.0 - x + 0.5 * x * x - 0.25 * x * x * x; }
double cubic_int(double x) { return 2.0 * x - 0.5 * x * x + x * x * x / 6.0 - x * x * x * x / 16.0; }

}  // namespace

TEST_CASE("Lagrange weights integrate the basis exactly") {
  const std::vector<double> t{0.0, 0.3, 1.1, 2.0};
  const auto w = lagrange_integral_weights(t, 0.3, 1.1);
  CHECK(w[0] + w[1] + w[2] + w[3] == doctest::Approx(0.8).epsilon(1e-15));
  double s = 0.0;
  for (int j = 0; j < 4; ++j) s += w[j] * cubic(t[j]);
  CHECK(s == doctest::Approx(cubic_int(1.1) - cubic_int(0.3)).epsilon(1e-14));
}

TEST_CASE("cumulative integral is exact for cubics on random grids") {
  test::Gen g(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_nodes(g, static_cast<std::size_t>(g.integer(4, 60)), -1.0, 3.0);
    if (x.size() < 4) continue;
    const auto cum = CellQuadrature(x).cumulative(sample(x, cubic));
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(cum[i] == doctest::Approx(cubic_int(x[i]) - cubic_int(x[0])).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("cumulative integral converges at fourth order") {
  auto err = [](int n) {
    std::vector<double> x(n + 1);
    for (int i = 0; i <= n; ++i) x[i] = 0.1 + 3.0 * std::pow(static_cast<double>(i) / n, 1.5);
    const auto cum = CellQuadrature(x).cumulative(
        sample(x, [](double t) { return std::sin(3 * t) * std::exp(-t); }));
    double e = 0.0;
    auto F = [](double t) { return -std::exp(-t) * (std::sin(3 * t) + 3 * std::cos(3 * t)) / 10.0; };
    for (std::size_t i = 0; i < x.size(); ++i) e = std::max(e, std::abs(cum[i] - (F(x[i]) - F(x[0]))));
    return e;
  };
  const double r1 = err(40) / err(80);
  const double r2 = err(80) / err(160);
  CHECK(r1 > 12.0);
  CHECK(r2 > 12.0);
  CHECK(r2 < 20.0);
}

TEST_CASE("a jump at a cut node keeps the full order") {
  // f = 1 below 1, r^2 above; each side is integrated with its own values.
  auto run = [](int n, bool split) {
    std::vector<double> x(2 * n + 1);
    for (int i = 0; i <= n; ++i) x[i] = std::pow(static_cast<double>(i) / n, 1.3);
    for (int i = 1; i <= n; ++i) x[n + i] = 1.0 + std::pow(static_cast<double>(i) / n, 1.1);
    std::vector<double> left(x.size()), right(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      left[i] = 1.0;
      right[i] = x[i] * x[i] * std::cos(x[i]);
    }
    const double exact = (1.0 - x[0]) + ((x[2 * n] * x[2 * n] - 2) * std::sin(x[2 * n]) +
                                         2 * x[2 * n] * std::cos(x[2 * n])) -
                         ((1.0 - 2) * std::sin(1.0) + 2 * std::cos(1.0));
    const std::size_t c = static_cast<std::size_t>(n);
    if (split) {
      const CellQuadrature q(x, {c});
      const auto a = q.cells(left, 0, c);
      const auto b = q.cells(right, c, x.size() - 1);
      double s = 0.0;
      for (double v : a) s += v;
      for (double v : b) s += v;
      return std::abs(s - exact);
    }
    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = x[i] <= 1.0 ? left[i] : right[i];
    const auto cum = CellQuadrature(x).cumulative(f);
    return std::abs(cum.back() - exact);
  };
  CHECK(run(20, true) / run(40, true) > 12.0);
  CHECK(run(20, false) / run(40, false) < 6.0);
  CHECK(run(40, true) < 1e-3 * run(40, false));
}

TEST_CASE("converges to the Simpson reference on a stellar-like integrand") {
  auto f = [](double r) { return r * r / (1.0 + r * r) * (1.0 + 0.3 * std::cos(std::log(r + 1))); };
  const double ref = oracle::reference_quadrature(f, 1e-4, 10.0, {}, 200000);
  std::vector<double> err;
  for (int refine : {1, 2, 4}) {
    GridSpec s{1e-4, 10.0, 0.01, 100};
    s.refinement = refine;
    const RadialGrid g = make_grid(s);
    std::vector<double> y(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) y[i] = f(g[i]);
    err.push_back(std::abs(CellQuadrature(g.nodes()).cumulative(y).back() - ref) / ref);
  }
  CHECK(err[0] < 1e-7);
  CHECK(err[0] / err[1] > 12.0);
  CHECK(err[1] / err[2] > 12.0);
  CHECK(err[2] < 1e-10);
}

TEST_CASE("narrow segments and bad input") {
  const std::vector<double> x{0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  const std::vector<double> f{1, 1, 1, 1, 1, 1};
  const CellQuadrature q(x, {1, 3});
  const auto c = q.cells(f);
  for (double v : c) CHECK(v == doctest::Approx(0.5));
  CHECK_THROWS_AS(CellQuadrature(std::vector<double>{0.0, 1.0, 2.0}), DomainError);
  CHECK(prefix_sum(std::vector<double>{1.0, 2.0}, 3.0) == std::vector<double>{3.0, 4.0, 6.0});
  CHECK(interpolate_cubic(x, sample(x, cubic), 1.23) == doctest::Approx(cubic(1.23)).epsilon(1e-14));
  CHECK_THROWS_AS(interpolate_cubic(x, f, 3.0), DomainError);
}
