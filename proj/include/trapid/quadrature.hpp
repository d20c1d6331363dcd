#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace trapid {

/// Integrals of the Lagrange basis through `t` over [lo, hi]; 1 to 4 nodes.
std::array<double, 4> lagrange_integral_weights(std::span<const double> t, double lo, double hi);

/// Per-interval quadrature on a fixed non-uniform grid.
///
/// Each interval [x_i, x_{i+1}] is integrated exactly for the cubic through
/// four neighbouring nodes, giving a fourth-order cumulative integral at every
/// node. Stencils never reach across a cut, so an integrand that jumps at a
/// cut node keeps the full order provided the caller hands each segment its
/// own one-sided values. Segments with fewer than four nodes fall back to the
/// quadratic or trapezoidal rule.
class CellQuadrature {
 public:
  explicit CellQuadrature(std::span<const double> x, std::vector<std::size_t> cuts = {});

  std::size_t nodes() const { return x_.size(); }
  std::span<const std::size_t> segment_bounds() const { return bounds_; }

  /// Integrals over intervals lo..hi-1 (node indices, both must be segment
  /// bounds) of the samples f, which must cover all nodes.
  std::vector<double> cells(std::span<const double> f, std::size_t lo, std::size_t hi) const;
  /// cells() over the full grid with a single set of samples.
  std::vector<double> cells(std::span<const double> f) const;

  /// out[0] = 0, out[i] = integral from x_0 to x_i.
  std::vector<double> cumulative(std::span<const double> f) const;

 private:
  std::vector<double> x_;
  std::vector<std::size_t> bounds_;
  std::vector<std::int32_t> start_;
  std::vector<double> w0_, w1_, w2_, w3_;
};

/// Prefix sums of cell integrals with a leading offset: out[0] = offset.
std::vector<double> prefix_sum(std::span<const double> cells, double offset = 0.0);

/// Local cubic Lagrange interpolation of tabulated f at xq (x strictly increasing).
double interpolate_cubic(std::span<const double> x, std::span<const double> f, double xq);

}  // namespace trapid
