#include "trapid/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trapid/errors.hpp"

namespace trapid {

RadialGrid::RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw DomainError("radial grid needs at least two nodes");
  if (!(nodes_.front() > 0.0)) throw DomainError("radial grid must exclude r = 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw DomainError("radial grid nodes must be strictly increasing (node " + std::to_string(i) +
                        ")");
    }
  }
}

std::size_t RadialGrid::find(double r) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), r * (1.0 - 1e-14));
  if (it != nodes_.end() && std::abs(*it - r) <= 1e-14 * std::abs(r)) {
    return static_cast<std::size_t>(it - nodes_.begin());
  }
  return npos;
}

std::size_t RadialGrid::interval_of(double r) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(i, nodes_.size() - 2);
}

namespace {

// Stretched coordinate s(r): s = r/dr below the crossover, logarithmic above.
struct Stretch {
  double dr;
  double q;
  double r_c;

  double s(double r) const { return r <= r_c ? r / dr : r_c / dr + std::log(r / r_c) / q; }
  double r(double s_val) const {
    const double s_c = r_c / dr;
    return s_val <= s_c ? s_val * dr : r_c * std::exp((s_val - s_c) * q);
  }
};

}  // namespace

RadialGrid make_grid(const GridSpec& spec) {
  if (!(spec.r_min > 0.0) || !(spec.r_max > spec.r_min)) {
    throw DomainError("grid spec needs 0 < r_min < r_max");
  }
  if (!(spec.dr > 0.0) || !(spec.points_per_decade > 0.0)) {
    throw DomainError("grid spec needs dr > 0 and points_per_decade > 0");
  }
  if (spec.refinement < 1 || spec.min_segment_intervals < 1) {
    throw DomainError("grid refinement and min_segment_intervals must be >= 1");
  }

  std::vector<double> cuts{spec.r_min};
  std::vector<double> bps = spec.breakpoints;
  std::sort(bps.begin(), bps.end());
  for (double b : bps) {
    if (!(b > spec.r_min && b < spec.r_max)) {
      throw DomainError("grid breakpoint " + std::to_string(b) + " outside (r_min, r_max)");
    }
    // Breakpoints that differ only by rounding collapse onto one node.
    if (b > cuts.back() * (1.0 + 1e-12) && b < spec.r_max * (1.0 - 1e-12)) cuts.push_back(b);
  }
  cuts.push_back(spec.r_max);

  const double q = std::log(10.0) / spec.points_per_decade;
  const Stretch st{spec.dr, q, spec.dr / q};

  std::vector<double> nodes{spec.r_min};
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double s0 = st.s(cuts[j]);
    const double s1 = st.s(cuts[j + 1]);
    const auto base = static_cast<long>(std::ceil(s1 - s0 - 1e-9));
    const long n = spec.refinement * std::max<long>(spec.min_segment_intervals, base);
    for (long i = 1; i < n; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(n);
      nodes.push_back(st.r(s0 + (s1 - s0) * frac));
    }
    nodes.push_back(cuts[j + 1]);
  }
  return RadialGrid(std::move(nodes));
}

}  // namespace trapid
