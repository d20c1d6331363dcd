#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace trapid {

/// Node-placement recipe, all radii in geometric units.
///
/// Spacing is uniform (dr) near the center and geometric (points_per_decade)
/// in the tail; the crossover sits where both give the same step. Every
/// breakpoint becomes an exact node, and each segment between consecutive
/// breakpoints is divided uniformly in the stretched coordinate, so raising
/// `refinement` by 2 halves every interval and keeps all coarse nodes.
struct GridSpec {
  double r_min = 0.0;
  double r_max = 0.0;
  double dr = 0.0;
  double points_per_decade = 200.0;
  int refinement = 1;
  int min_segment_intervals = 4;
  std::vector<double> breakpoints;
};

class RadialGrid {
 public:
  RadialGrid() = default;
  /// Takes ownership of strictly increasing, positive nodes. Throws DomainError otherwise.
  explicit RadialGrid(std::vector<double> nodes);

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double r_min() const { return nodes_.front(); }
  double r_max() const { return nodes_.back(); }

  /// Index of the node equal to r (relative tolerance 1e-14), or npos.
  std::size_t find(double r) const;
  /// Largest i with nodes[i] <= r (clamped to [0, size-2]).
  std::size_t interval_of(double r) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<double> nodes_;
};

RadialGrid make_grid(const GridSpec& spec);

}  // namespace trapid
