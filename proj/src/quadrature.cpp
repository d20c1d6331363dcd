#include "trapid/quadrature.hpp"

#include <algorithm>
#include <string>

#include "trapid/errors.hpp"
#include "trapid/kernels.hpp"

namespace trapid {

std::array<double, 4> lagrange_integral_weights(std::span<const double> t, double lo, double hi) {
  const std::size_t p = t.size();
  if (p < 1 || p > 4) throw DomainError("lagrange_integral_weights: need 1..4 nodes");
  std::array<double, 4> w{0.0, 0.0, 0.0, 0.0};
  const double len = hi - lo;
  for (std::size_t j = 0; j < p; ++j) {
    // Basis polynomial in u = x - lo, built up as coefficients c[0..3].
    std::array<double, 4> c{1.0, 0.0, 0.0, 0.0};
    double denom = 1.0;
    for (std::size_t q = 0; q < p; ++q) {
      if (q == j) continue;
      const double root = t[q] - lo;
      for (std::size_t d = 3; d > 0; --d) c[d] = c[d - 1] - root * c[d];
      c[0] = -root * c[0];
      denom *= t[j] - t[q];
    }
    double integral = 0.0;
    double pw = len;
    for (std::size_t d = 0; d < 4; ++d) {
      integral += c[d] * pw / static_cast<double>(d + 1);
      pw *= len;
    }
    w[j] = integral / denom;
  }
  return w;
}

CellQuadrature::CellQuadrature(std::span<const double> x, std::vector<std::size_t> cuts)
    : x_(x.begin(), x.end()) {
  const std::size_t n = x_.size();
  if (n < 4) throw DomainError("CellQuadrature: need at least four nodes");
  bounds_.push_back(0);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t c : cuts) {
    if (c > 0 && c + 1 < n && c != bounds_.back()) bounds_.push_back(c);
  }
  bounds_.push_back(n - 1);

  const std::size_t cells = n - 1;
  start_.resize(cells);
  w0_.resize(cells);
  w1_.resize(cells);
  w2_.resize(cells);
  w3_.resize(cells);

  for (std::size_t s = 0; s + 1 < bounds_.size(); ++s) {
    const std::size_t lo = bounds_[s];
    const std::size_t hi = bounds_[s + 1];
    const std::size_t width = std::min<std::size_t>(4, hi - lo + 1);
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t first = i > lo ? i - 1 : lo;
      first = std::min(first, hi + 1 - width);
      const auto w = lagrange_integral_weights(std::span(x_).subspan(first, width), x_[i], x_[i + 1]);
      // The kernel always reads four samples; shift narrow stencils so the
      // extra reads stay in bounds and carry zero weight.
      const std::size_t st = std::min(first, n - 4);
      std::array<double, 4> placed{0.0, 0.0, 0.0, 0.0};
      for (std::size_t j = 0; j < width; ++j) placed[first - st + j] = w[j];
      start_[i] = static_cast<std::int32_t>(st);
      w0_[i] = placed[0];
      w1_[i] = placed[1];
      w2_[i] = placed[2];
      w3_[i] = placed[3];
    }
  }
}

std::vector<double> CellQuadrature::cells(std::span<const double> f, std::size_t lo,
                                          std::size_t hi) const {
  if (f.size() != x_.size()) throw DomainError("CellQuadrature: sample count mismatch");
  if (hi < lo || hi >= x_.size()) throw DomainError("CellQuadrature: bad interval range");
  std::vector<double> out(hi - lo);
  kernels::active().stencil_dot4(hi - lo, w0_.data() + lo, w1_.data() + lo, w2_.data() + lo,
                                 w3_.data() + lo, start_.data() + lo, f.data(), out.data());
  return out;
}

std::vector<double> CellQuadrature::cells(std::span<const double> f) const {
  return cells(f, 0, x_.size() - 1);
}

std::vector<double> CellQuadrature::cumulative(std::span<const double> f) const {
  return prefix_sum(cells(f));
}

std::vector<double> prefix_sum(std::span<const double> cells, double offset) {
  std::vector<double> out(cells.size() + 1);
  out[0] = offset;
  for (std::size_t i = 0; i < cells.size(); ++i) out[i + 1] = out[i] + cells[i];
  return out;
}

double interpolate_cubic(std::span<const double> x, std::span<const double> f, double xq) {
  const std::size_t n = x.size();
  if (n < 4 || f.size() != n) throw DomainError("interpolate_cubic: need >= 4 samples");
  if (xq < x.front() || xq > x.back()) {
    throw DomainError("interpolate_cubic: " + std::to_string(xq) + " outside the table");
  }
  auto it = std::upper_bound(x.begin(), x.end(), xq);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  std::size_t first = i > 0 ? i - 1 : 0;
  first = std::min(first, n - 4);
  double sum = 0.0;
  for (std::size_t j = first; j < first + 4; ++j) {
    double l = 1.0;
    for (std::size_t q = first; q < first + 4; ++q) {
      if (q != j) l *= (xq - x[q]) / (x[j] - x[q]);
    }
    sum += l * f[j];
  }
  return sum;
}

}  // namespace trapid
