#include "trapid/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "trapid/ef_frame.hpp"
#include "trapid/errors.hpp"
#include "trapid/io.hpp"
#include "trapid/static_star.hpp"

namespace trapid {

namespace {

struct PointRequest {
  double k;
  double r_star;  // geometric
  double delta;   // geometric
  double Delta;   // geometric
  double h;       // NaN: delta * C1
};

std::shared_ptr<const StaticProfile> solve_for(const RunConfig& cfg, const FluidModel& model,
                                               double r_star, double delta, double Delta) {
  const Perturbation probe = Perturbation::make(r_star, delta, 1.0, Delta);
  std::vector<double> cuts = required_nodes(probe);
  cuts.push_back(1.5 * r_star);
  std::sort(cuts.begin(), cuts.end());
  return std::make_shared<const StaticProfile>(
      solve_static(model, cfg.grid_spec(model, cuts), cfg.solve_options()));
}

void run_pool(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  const auto n = static_cast<std::size_t>(std::max(1, workers));
  if (n == 1 || count <= 1) {
    body();
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(n, count); ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
}

std::vector<double> or_scalar(const std::vector<double>& list, double fallback) {
  return list.empty() ? std::vector<double>{fallback} : list;
}

}  // namespace

SweepResult run_sweep(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.k_list.empty() && !cfg.k) throw DomainError("sweep needs --k or --k-list");
  const std::vector<double> ks = cfg.k_list.empty() ? std::vector<double>{*cfg.k} : cfg.k_list;
  const std::vector<double> rstars = or_scalar(cfg.r_star_list, cfg.r_star);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<PointRequest> reqs;
  std::vector<BisectionRow> bis;
  for (double k : ks) {
    const double L = cfg.model(k).length_scale();
    for (double rs : rstars) {
      const std::vector<double> deltas = or_scalar(cfg.delta_list, cfg.delta_or_default(rs));
      const std::vector<double> hs = cfg.h_list.empty()
                                         ? std::vector<double>{cfg.h ? *cfg.h : nan}
                                         : cfg.h_list;
      for (double d : deltas) {
        for (double h : hs) reqs.push_back({k, rs * L, d * L, cfg.Delta_or_default(rs) * L, h});
        if (cfg.bisect) bis.push_back({k, rs * L, d * L, std::nullopt, {}});
      }
    }
  }

  SweepResult out;
  out.rows.resize(reqs.size());
  out.bisection = bis;
  const std::size_t total = reqs.size() + bis.size();
  run_pool(total, cfg.workers, [&](std::size_t i) {
    if (i < reqs.size()) {
      const PointRequest& q = reqs[i];
      SweepRow& row = out.rows[i];
      row.k = q.k;
      row.r_star = q.r_star;
      row.delta = q.delta;
      row.Delta = q.Delta;
      row.h = q.h;
      try {
        const FluidModel model = cfg.model(q.k);
        const EfStaticFields fields = to_ef(*solve_for(cfg, model, q.r_star, q.delta, q.Delta));
        double h = q.h;
        if (std::isnan(h)) {
          const Perturbation probe = Perturbation::make(q.r_star, q.delta, 1.0, q.Delta);
          h = q.delta * theorem_constants(fields, probe).C1;
        }
        row.h = h;
        const Perturbation pert = Perturbation::make(q.r_star, q.delta, h, q.Delta);
        const EfStaticFields aligned = align_fields(fields, pert);
        row.report = verify_theorem(build_initial_data(aligned, pert), aligned, pert);
        row.ok = true;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      return;
    }
    BisectionRow& b = out.bisection[i - reqs.size()];
    try {
      const FluidModel model = cfg.model(b.k);
      const double Dl = cfg.Delta_or_default(b.r_star / model.length_scale()) * model.length_scale();
      const EfStaticFields fields = to_ef(*solve_for(cfg, model, b.r_star, b.delta, Dl));
      b.result = critical_ratio(fields, b.r_star, b.delta, Dl);
    } catch (const std::exception& e) {
      b.error = e.what();
    }
  });

  for (double k : ks) {
    const double L = cfg.model(k).length_scale();
    for (double rs : rstars) {
      SweepGroupFit g{k, rs * L, std::nullopt, {}};
      std::vector<ScalingPoint> pts;
      for (const SweepRow& r : out.rows) {
        if (r.k != k || r.r_star != rs * L || !r.ok) continue;
        if (r.report.band_sup_av == 0.0 || r.report.annulus_sup_av == 0.0) continue;
        pts.push_back({r.delta, r.h, std::abs(r.report.band_sup_av),
                       std::abs(r.report.annulus_sup_av)});
      }
      try {
        g.fits = fit_c2_c3(pts);
      } catch (const std::exception& e) {
        g.note = e.what();
      }
      out.fits.push_back(g);
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  using io::format_double;
  std::ostringstream os;
  os << "k,r_star,delta,h,Delta,delta_over_h,hypothesis_met,C1,min_a0,tail_bound,"
        "band_sup_av,band_min_av,annulus_sup_av,band_bound,c4_bound,all_ok,error\n";
  for (const SweepRow& r : result.rows) {
    const TheoremReport& t = r.report;
    os << format_double(r.k) << ',' << format_double(r.r_star) << ',' << format_double(r.delta)
       << ',' << format_double(r.h) << ',' << format_double(r.Delta) << ',';
    if (r.ok) {
      os << format_double(t.delta_over_h) << ',' << (t.hypothesis_met ? 1 : 0) << ','
         << format_double(t.constants.C1) << ',' << format_double(t.min_a0) << ','
         << format_double(t.tail_bound) << ',' << format_double(t.band_sup_av) << ','
         << format_double(t.band_min_av) << ',' << format_double(t.annulus_sup_av) << ','
         << format_double(t.band_bound) << ',' << format_double(t.c4_bound) << ','
         << (t.all_ok() ? 1 : 0) << ",\n";
    } else {
      std::string err = r.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      os << ",,,,,,,,,,0," << err << '\n';
    }
  }
  return os.str();
}

std::string fits_json(const SweepResult& result) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepGroupFit& g : result.fits) {
    nlohmann::ordered_json j;
    j["k"] = g.k;
    j["r_star"] = g.r_star;
    if (g.fits) {
      j["C2_band"] = io::exponent_fit_json(g.fits->band);
      j["C3_annulus"] = io::exponent_fit_json(g.fits->annulus);
    } else {
      j["C2_band"] = nullptr;
      j["C3_annulus"] = nullptr;
      j["note"] = g.note;
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string bisection_csv(const SweepResult& result) {
  using io::format_double;
  std::ostringstream os;
  os << "k,r_star,delta,h_critical,ratio_critical,ratio_threshold,conservative,iterations,error\n";
  for (const BisectionRow& b : result.bisection) {
    os << format_double(b.k) << ',' << format_double(b.r_star) << ',' << format_double(b.delta)
       << ',';
    if (b.result) {
      os << format_double(b.result->h_critical) << ',' << format_double(b.result->ratio_critical)
         << ',' << format_double(b.result->ratio_threshold) << ','
         << (b.result->conservative ? 1 : 0) << ',' << b.result->iterations << ",\n";
    } else {
      std::string err = b.error;
      std::replace(err.begin(), err.end(), ',', ';');
      os << ",,,0,0," << err << '\n';
    }
  }
  return os.str();
}

}  // namespace trapid
