#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "trapid/errors.hpp"
#include "trapid/quadrature.hpp"
#include "trapid/trap_idata.hpp"

namespace trapid {

namespace {

constexpr double kPi = std::numbers::pi;

double density_at(const EfStaticFields& f, double r) {
  const std::size_t i = f.grid.find(r);
  if (i != RadialGrid::npos) return f.rho(i);
  std::vector<double> rho(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) rho[j] = f.rho(j);
  return interpolate_cubic(f.grid.nodes(), rho, r);
}

// Scans nodes where `in_range` holds and records violations of `holds`; the
// witness is the first violation, or the node with the smallest `margin`.
ClauseResult scan(const std::string& name, const InitialDataSet& d,
                  const std::function<bool(std::size_t)>& in_range,
                  const std::function<bool(std::size_t)>& holds,
                  const std::function<double(std::size_t)>& margin) {
  ClauseResult c{name, true, 0.0, 0, true};
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!in_range(i)) continue;
    if (!holds(i)) {
      if (c.violations == 0) c.witness_radius = d.grid[i];
      ++c.violations;
      c.ok = false;
    } else if (c.ok) {
      const double mg = margin(i);
      if (mg < best) {
        best = mg;
        c.witness_radius = d.grid[i];
      }
    }
  }
  return c;
}

}  // namespace

double TheoremConstants::band_bound(double h) const {
  if (std::isinf(h)) return 0.0;
  return -C4_prefactor * (2.0 * h + 1.0) / (h * h);
}

TheoremConstants theorem_constants(const EfStaticFields& fields, const Perturbation& pert) {
  const double r32 = 1.5 * pert.r_star;
  if (r32 > fields.grid.r_max()) {
    throw DomainError("theorem_constants: grid must extend past 3 r_star / 2");
  }
  const double K = fields.model.k2();
  const double one_minus_alpha = 1.0 - fields.model.alpha();
  TheoremConstants c;
  const std::size_t i32 = fields.grid.find(r32);
  c.b_at_three_halves =
      i32 != RadialGrid::npos ? fields.b[i32] : interpolate_cubic(fields.grid.nodes(), fields.b, r32);
  c.C1 = 52.0 * kPi * (1.0 - K) / 3.0 * fields.model.rho0 * pert.r_star * c.b_at_three_halves /
         one_minus_alpha;
  c.rho_at_band_hi = density_at(fields, pert.band_hi());
  c.C4_prefactor = 2.0 * kPi * pert.band_lo() * c.rho_at_band_hi * one_minus_alpha;
  return c;
}

bool TheoremReport::all_ok() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.ok; });
}

const ClauseResult* TheoremReport::clause(const std::string& name) const {
  for (const auto& c : clauses) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

TheoremReport verify_theorem(const InitialDataSet& d, const EfStaticFields& fields,
                             const Perturbation& pert) {
  const EfStaticFields& f = d.fields ? *d.fields : fields;
  if (f.size() != d.size()) throw DomainError("verify_theorem: fields and data grids differ");

  TheoremReport rep;
  rep.model = d.model;
  rep.pert = pert;
  rep.constants = theorem_constants(f, pert);
  rep.delta_over_h = std::isinf(pert.h) ? 0.0 : pert.delta / pert.h;
  rep.hypothesis_met = pert.delta * rep.constants.C1 <= pert.h;
  rep.band_bound = rep.constants.band_bound(pert.h);
  rep.c4_bound = std::isinf(pert.h) ? 0.0 : -rep.constants.C4_prefactor / (pert.h * pert.h);

  const NoTrappedVerdict nt = check_no_trapped(d);
  rep.min_a0 = nt.min_a0;
  rep.min_a0_radius = nt.witness_radius;
  rep.tail_bound = nt.tail_bound;

  const std::size_t lo = d.band_lo_index, hi = d.band_hi_index, ahi = d.annulus_hi_index;
  rep.band_sup_av = -std::numeric_limits<double>::infinity();
  rep.band_min_av = std::numeric_limits<double>::infinity();
  for (std::size_t i = lo; i <= hi; ++i) {
    rep.band_sup_av = std::max(rep.band_sup_av, d.av[i]);
    rep.band_min_av = std::min(rep.band_min_av, d.av[i]);
  }
  rep.annulus_sup_av = -std::numeric_limits<double>::infinity();
  for (std::size_t i = hi + 1; i <= ahi; ++i) rep.annulus_sup_av = std::max(rep.annulus_sup_av, d.av[i]);
  for (double x : d.a1) rep.max_abs_a1 = std::max(rep.max_abs_a1, std::abs(x));

  const bool perturbed = !std::isinf(pert.h);
  const auto all = [](std::size_t) { return true; };

  ClauseResult pos = scan(
      "a0_positive", d, all, [&](std::size_t i) { return d.a0[i] > 0.0; },
      [&](std::size_t i) { return d.a0[i]; });
  if (!(nt.tail_bound > 0.0)) {
    if (pos.ok) pos.witness_radius = d.grid.r_max();
    pos.ok = false;
    ++pos.violations;
  }
  rep.clauses.push_back(pos);

  rep.clauses.push_back(scan(
      "a0_le_static", d, all, [&](std::size_t i) { return d.a0[i] <= f.a[i]; },
      [&](std::size_t i) { return f.a[i] - d.a0[i]; }));

  rep.clauses.push_back(scan(
      "av_zero_inside", d, [&](std::size_t i) { return i < lo; },
      [&](std::size_t i) { return d.av[i] == 0.0; }, [](std::size_t) { return 0.0; }));

  ClauseResult neg = scan(
      "av_negative_outside", d, [&](std::size_t i) { return i > lo; },
      [&](std::size_t i) { return d.av[i] < 0.0; }, [&](std::size_t i) { return -d.av[i]; });
  ClauseResult band = scan(
      "av_band_bound", d, [&](std::size_t i) { return i >= lo && i <= hi; },
      [&](std::size_t i) { return d.av[i] <= rep.band_bound; },
      [&](std::size_t i) { return rep.band_bound - d.av[i]; });
  ClauseResult c4 = scan(
      "av_band_c4", d, [&](std::size_t i) { return i >= lo && i <= hi; },
      [&](std::size_t i) { return d.av[i] <= rep.c4_bound; },
      [&](std::size_t i) { return rep.c4_bound - d.av[i]; });
  for (ClauseResult* c : {&neg, &band, &c4}) {
    if (!perturbed) *c = ClauseResult{c->name, true, 0.0, 0, false};
    rep.clauses.push_back(*c);
  }

  const double margin = 1.0 - d.model.alpha();
  rep.clauses.push_back(scan(
      "a1_within_margin", d, [&](std::size_t i) { return i >= lo; },
      [&](std::size_t i) { return -d.a1[i] <= margin; },
      [&](std::size_t i) { return margin + d.a1[i]; }));

  for (std::size_t i = 0; i < d.size(); ++i) {
    const double scale = std::max(std::abs(d.av[i]), std::abs(d.av_expanded[i]));
    if (scale > 0.0) {
      rep.forms_max_rel_gap =
          std::max(rep.forms_max_rel_gap, std::abs(d.av[i] - d.av_expanded[i]) / scale);
    }
  }
  rep.clauses.push_back(scan(
      "av_forms_agree", d, all,
      [&](std::size_t i) {
        const double scale = std::max(std::abs(d.av[i]), std::abs(d.av_expanded[i]));
        return std::abs(d.av[i] - d.av_expanded[i]) <= kFormsRelTol * scale;
      },
      [&](std::size_t i) { return -std::abs(d.av[i] - d.av_expanded[i]); }));
  return rep;
}

CriticalRatio critical_ratio(const EfStaticFields& fields, double r_star, double delta,
                             double Delta) {
  const Perturbation probe = Perturbation::make(r_star, delta, 1.0, Delta);
  const EfStaticFields aligned = align_fields(fields, probe);
  const TheoremConstants c = theorem_constants(aligned, probe);

  auto min_a0 = [&](double h) {
    Perturbation p = probe;
    p.h = h;
    const NoTrappedVerdict v = check_no_trapped(build_initial_data(aligned, p));
    return std::min(v.min_a0, v.tail_bound);
  };

  CriticalRatio out;
  out.ratio_threshold = 1.0 / c.C1;
  double h_hi = delta * c.C1;
  int guard = 0;
  while (min_a0(h_hi) <= 0.0) {
    h_hi *= 2.0;
    if (++guard > 200) throw NumericalError("critical_ratio: no admissible h found");
  }
  double h_lo = h_hi;
  guard = 0;
  do {
    h_lo *= 0.5;
    if (++guard > 200) throw NumericalError("critical_ratio: a0 stays positive for every h");
  } while (min_a0(h_lo) > 0.0);

  while (h_hi - h_lo > 1e-13 * h_hi && out.iterations < 200) {
    const double mid = 0.5 * (h_lo + h_hi);
    (min_a0(mid) > 0.0 ? h_hi : h_lo) = mid;
    ++out.iterations;
  }
  out.h_critical = h_hi;
  out.ratio_critical = delta / h_hi;
  out.conservative = out.ratio_critical >= out.ratio_threshold;
  return out;
}

}  // namespace trapid
