#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trapid/errors.hpp"
#include "trapid/kernels.hpp"
#include "trapid/trap_idata.hpp"

namespace trapid {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t node_index(const RadialGrid& grid, double r, const char* what) {
  const std::size_t i = grid.find(r);
  if (i == RadialGrid::npos) {
    throw DomainError(std::string("perturbation ") + what + " is not a grid node");
  }
  return i;
}

}  // namespace

Perturbation Perturbation::make(double r_star, double delta, double h, double Delta) {
  if (std::isnan(Delta)) Delta = 0.5 * r_star;
  if (!(r_star > 0.0)) throw DomainError("perturbation: r_star must be positive");
  if (!(Delta > 0.0 && Delta < r_star)) throw DomainError("perturbation: Delta must lie in (0, r_star)");
  if (!(delta > 0.0 && delta < Delta)) throw DomainError("perturbation: delta must lie in (0, Delta)");
  if (!(delta <= 0.5 * r_star)) throw DomainError("perturbation: delta must not exceed r_star/2");
  if (!(h > 0.0)) throw DomainError("perturbation: h must be positive");
  return Perturbation{r_star, delta, h, Delta};
}

double Perturbation::band_factor() const {
  if (std::isinf(h)) return 0.0;
  return (2.0 * h + 1.0) / (h * h);
}

std::vector<double> required_nodes(const Perturbation& pert) {
  return {pert.band_lo(), pert.band_hi(), pert.annulus_hi()};
}

EfStaticFields align_fields(const EfStaticFields& fields, const Perturbation& pert) {
  const std::vector<double> need = required_nodes(pert);
  if (need.front() <= fields.grid.r_min() || need.back() > fields.grid.r_max()) {
    throw DomainError("perturbation band or annulus outside the grid [" +
                      std::to_string(fields.grid.r_min()) + ", " +
                      std::to_string(fields.grid.r_max()) + "]");
  }
  const bool present = std::all_of(need.begin(), need.end(), [&](double r) {
    return fields.grid.find(r) != RadialGrid::npos;
  });
  if (present) return fields;
  if (!fields.source) {
    throw DomainError("band edges are not grid nodes and the fields have no source profile");
  }
  return to_ef(insert_nodes(*fields.source, need));
}

InitialDataSet build_initial_data(const EfStaticFields& fields, const Perturbation& pert) {
  auto f = std::make_shared<const EfStaticFields>(align_fields(fields, pert));
  const std::size_t n = f->size();
  const double K = f->model.k2();

  InitialDataSet d;
  d.model = f->model;
  d.pert = pert;
  d.fields = f;
  d.grid = f->grid;
  d.band_lo_index = node_index(d.grid, pert.band_lo(), "band start");
  d.band_hi_index = node_index(d.grid, pert.band_hi(), "band end");
  d.annulus_hi_index = node_index(d.grid, pert.annulus_hi(), "annulus end");
  const std::size_t lo = d.band_lo_index;
  const std::size_t hi = d.band_hi_index;

  d.M0 = f->M;
  d.b0 = f->b;
  d.chi.assign(n, 0.0);
  d.V0 = f->V;
  for (std::size_t i = lo; i <= hi; ++i) {
    d.chi[i] = 1.0;
    d.V0[i] = f->V[i] + f->V[i] / pert.h;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(d.V0[i] < 0.0)) {
      throw NumericalError("perturbed velocity must stay negative (|V0| = -V0) at r = " +
                           std::to_string(d.grid[i]));
    }
  }

  const CellQuadrature quad(d.grid.nodes(), {lo, hi});

  // Perturbation part: -(4 pi (1-k^2)/h) / (r b(r)) * integral over band of b M a s^2.
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = d.grid[i];
    g[i] = f->b[i] * f->M[i] * f->a[i] * r * r;
  }
  const std::vector<double> band_cells = quad.cells(g, lo, hi);
  std::vector<double> J(n, 0.0);
  for (std::size_t i = lo; i < hi; ++i) J[i + 1] = J[i] + band_cells[i - lo];
  for (std::size_t i = hi + 1; i < n; ++i) J[i] = J[hi];

  const double coef = std::isinf(pert.h) ? 0.0 : 4.0 * kPi * (1.0 - K) / pert.h;
  d.a1.resize(n);
  kernels::active().perturbation_shift(n, coef, J.data(), d.grid.nodes().data(), f->b.data(),
                                       d.a1.data());
  d.a0.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.a0[i] = f->a[i] + d.a1[i];

  // Single quadrature of the full perturbed integral, segment by segment so the
  // indicator jump never sits inside a stencil.
  const double cA = (1.0 - K) / (1.0 + K);
  const double inv_h = std::isinf(pert.h) ? 0.0 : 1.0 / pert.h;
  std::vector<double> outer(n), inner(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = d.grid[i];
    const double base = f->b[i] * f->M[i] * r * r;
    outer[i] = base * (1.0 + cA * f->a[i]);
    inner[i] = base * (1.0 + cA * (1.0 + inv_h) * f->a[i]);
  }
  std::vector<double> cells = quad.cells(outer, 0, lo);
  const auto mid = quad.cells(inner, lo, hi);
  const auto tail = quad.cells(outer, hi, n - 1);
  cells.insert(cells.end(), mid.begin(), mid.end());
  cells.insert(cells.end(), tail.begin(), tail.end());
  const std::vector<double> I = prefix_sum(cells, center_cell(*f, 1.0 + cA * f->a[0]));
  d.a0_quadrature.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.a0_quadrature[i] = 1.0 - 4.0 * kPi * (1.0 + K) * I[i] / (d.grid[i] * f->b[i]);
  }

  AvGrids av = compute_av(d, *f);
  d.av = std::move(av.direct);
  d.av_expanded = std::move(av.expanded);
  return d;
}

AvGrids compute_av(const InitialDataSet& data, const EfStaticFields& fields) {
  const std::size_t n = data.size();
  if (fields.size() != n) throw DomainError("compute_av: fields and data grids differ");
  AvGrids out{std::vector<double>(n), std::vector<double>(n)};
  const auto& k = kernels::active();
  const double* r = data.grid.nodes().data();
  k.av_direct(n, r, data.b0.data(), data.M0.data(), data.a0.data(), data.V0.data(),
              out.direct.data());
  k.av_expanded(n, r, fields.b.data(), fields.M.data(), data.a1.data(), data.a0.data(),
                fields.a.data(), data.chi.data(), data.pert.band_factor(), out.expanded.data());
  return out;
}

NoTrappedVerdict check_no_trapped(const InitialDataSet& data) {
  NoTrappedVerdict v;
  const std::size_t n = data.size();
  auto it = std::min_element(data.a0.begin(), data.a0.end());
  v.min_a0 = *it;
  v.witness_radius = data.grid[static_cast<std::size_t>(it - data.a0.begin())];

  double floor = 1.0 - data.model.alpha();
  if (data.fields) {
    const double r_last = data.grid.r_max();
    for (std::size_t i = 0; i < n; ++i) {
      if (data.grid[i] >= 0.1 * r_last) floor = std::min(floor, data.fields->a[i]);
    }
  }
  v.tail_bound = floor - std::abs(data.a1.back());
  v.ok = v.min_a0 > 0.0 && v.tail_bound > 0.0;
  return v;
}

}  // namespace trapid
