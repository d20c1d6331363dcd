#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "trapid/ef_frame.hpp"
#include "trapid/errors.hpp"
#include "trapid/io.hpp"
#include "trapid/kernels.hpp"
#include "trapid/run_config.hpp"
#include "trapid/static_star.hpp"
#include "trapid/svg.hpp"
#include "trapid/sweep.hpp"
#include "trapid/trap_idata.hpp"

using namespace trapid;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct CliText {
  std::string h;
  std::string k_list, r_star_list, delta_list, h_list;
};

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::optional<double> parse_h(const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  return parse_number_list(text).at(0);
}

void finish_config(RunConfig& cfg, const CliText& text) {
  cfg.h = parse_h(text.h);
  if (!text.k_list.empty()) cfg.k_list = parse_number_list(text.k_list);
  if (!text.r_star_list.empty()) cfg.r_star_list = parse_number_list(text.r_star_list);
  if (!text.delta_list.empty()) cfg.delta_list = parse_number_list(text.delta_list);
  if (!text.h_list.empty()) cfg.h_list = parse_number_list(text.h_list);
  cfg.validate();
}

std::vector<double> scaled(const std::vector<double>& r, double L) {
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] / L;
  return out;
}

// --- plots ------------------------------------------------------------------

void plot_profile(const RunConfig& cfg, const io::CsvTable& t, const FluidModel& model) {
  const double L = model.length_scale();
  const auto x = scaled(t.column("r"), L);
  svg::Chart a;
  a.title = fmt::format("a(r) = 1 - 2m/r, k = {:.4g}", model.k);
  a.x_label = "r / L";
  a.y_label = "a";
  a.log_x = true;
  a.series.push_back({"a(r)", x, t.column("a")});
  a.hlines.push_back({1.0 - model.alpha(), "1 - alpha"});
  io::write_file(out_path(cfg, "a_profile.svg"), svg::render(a));

  const double c = singular_density_coefficient(model.k);
  const auto& rho = t.column("rho");
  const auto& av = t.column("a");
  std::vector<double> rr, ar;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = t.column("r")[i];
    rr.push_back(r * r * rho[i] / c);
    ar.push_back(av[i] / (1.0 - model.alpha()));
  }
  svg::Chart conv;
  conv.title = "Approach to the singular solution";
  conv.x_label = "r / L";
  conv.y_label = "ratio";
  conv.log_x = true;
  conv.series.push_back({"r^2 rho / c", x, rr});
  conv.series.push_back({"a / (1 - alpha)", x, ar, "#2ca02c"});
  conv.hlines.push_back({1.0, "1"});
  io::write_file(out_path(cfg, "convergence.svg"), svg::render(conv));
}

void plot_initial_data(const RunConfig& cfg, const io::CsvTable& t, const FluidModel& model) {
  const double L = model.length_scale();
  // The center is featureless for the perturbed data; start at 0.1 L.
  std::vector<double> x, a0, a_static, av;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.column("r")[i] < 0.1 * L) continue;
    x.push_back(t.column("r")[i] / L);
    a0.push_back(t.column("a0")[i]);
    a_static.push_back(t.column("a0")[i] - t.column("a1")[i]);
    av.push_back(t.column("av")[i]);
  }

  svg::Chart c;
  c.title = "Perturbed a0(r) against the static a(r)";
  c.x_label = "r / L";
  c.y_label = "a";
  c.log_x = true;
  c.series.push_back({"a0", x, a0});
  c.series.push_back({"static a", x, a_static, "#7f7f7f"});
  c.hlines.push_back({1.0 - model.alpha(), "1 - alpha"});
  io::write_file(out_path(cfg, "a0.svg"), svg::render(c));

  svg::Chart d;
  d.title = "Time derivative of a on the initial slice";
  d.x_label = "r / L";
  d.y_label = "d_v a";
  d.log_x = true;
  d.series.push_back({"d_v a", x, av, "#9467bd"});
  d.hlines.push_back({0.0, "0", "#7f7f7f"});
  io::write_file(out_path(cfg, "av.svg"), svg::render(d));
}

io::CsvTable load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  return io::read_csv(in);
}

// --- subcommands ------------------------------------------------------------

struct Solved {
  FluidModel model;
  std::shared_ptr<const StaticProfile> profile;
};

Solved solve(const RunConfig& cfg, const std::vector<double>& cuts = {}) {
  const FluidModel model = cfg.model();
  auto profile = std::make_shared<const StaticProfile>(
      solve_static(model, cfg.grid_spec(model, cuts), cfg.solve_options()));
  return {model, profile};
}

int cmd_static(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Solved s = solve(cfg);
  const double L = s.model.length_scale();
  const AsymptoticsReport rep =
      fit_asymptotics(*s.profile, {cfg.window_lo * L, cfg.window_hi * L});
  const EfStaticFields ef = to_ef(*s.profile);

  std::ostringstream prof, efs;
  io::write_profile_csv(prof, *s.profile);
  io::write_ef_csv(efs, ef);
  io::write_file(out_path(cfg, "profile.csv"), prof.str());
  io::write_file(out_path(cfg, "ef.csv"), efs.str());
  io::write_file(out_path(cfg, "asymptotics.json"),
                 io::asymptotics_json(rep, *s.profile).dump(2) + "\n");
  if (cfg.plot) {
    std::istringstream in(prof.str());
    plot_profile(cfg, io::read_csv(in), s.model);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fmt::print("k = {:.6g}  nodes = {}  time = {:.3f} s\n", s.model.k, s.profile->size(), secs);
  fmt::print("a_limit_est    = {:.6f}  (1 - alpha = {:.6f})\n", rep.a_limit_est,
             1.0 - s.model.alpha());
  fmt::print("b_exponent_est = {:.6f}  (2k^2/(1+k^2) = {:.6f})\n", rep.b_exponent_est,
             2.0 * s.model.k2() / (1.0 + s.model.k2()));
  fmt::print("rho_coeff_est  = {:.6g}  (c = {:.6g})\n", rep.rho_coeff_est,
             singular_density_coefficient(s.model.k));
  return kExitOk;
}

struct PerturbRun {
  InitialDataSet data;
  TheoremReport report;
};

PerturbRun run_perturbation(const RunConfig& cfg) {
  const FluidModel model = cfg.model();
  const double L = model.length_scale();
  const double r_star = cfg.r_star * L;
  const double delta = cfg.delta_or_default(cfg.r_star) * L;
  const double Delta = cfg.Delta_or_default(cfg.r_star) * L;
  const Perturbation probe = Perturbation::make(r_star, delta, 1.0, Delta);
  std::vector<double> cuts = required_nodes(probe);
  cuts.push_back(1.5 * r_star);
  std::sort(cuts.begin(), cuts.end());
  const Solved s = solve(cfg, cuts);
  const EfStaticFields fields = align_fields(to_ef(*s.profile), probe);
  const double h = cfg.h ? *cfg.h : delta * theorem_constants(fields, probe).C1;
  const Perturbation pert = Perturbation::make(r_star, delta, h, Delta);
  InitialDataSet data = build_initial_data(fields, pert);
  TheoremReport report = verify_theorem(data, fields, pert);
  return {std::move(data), std::move(report)};
}

void emit_perturbation(const RunConfig& cfg, const PerturbRun& run,
                       const std::optional<CriticalRatio>& crit) {
  std::ostringstream csv;
  io::write_initial_data_csv(csv, run.data);
  io::write_file(out_path(cfg, "initial_data.csv"), csv.str());
  json j = io::theorem_report_json(run.report);
  if (crit) {
    j["bisection"] = {{"h_critical", crit->h_critical},
                      {"ratio_critical", crit->ratio_critical},
                      {"ratio_threshold", crit->ratio_threshold},
                      {"conservative", crit->conservative},
                      {"iterations", crit->iterations}};
  }
  io::write_file(out_path(cfg, "theorem_report.json"), j.dump(2) + "\n");
  if (cfg.plot) {
    std::istringstream in(csv.str());
    plot_initial_data(cfg, io::read_csv(in), run.data.model);
  }
  const TheoremReport& r = run.report;
  fmt::print("delta/h = {:.6g}  1/C1 = {:.6g}  hypothesis_met = {}\n", r.delta_over_h,
             1.0 / r.constants.C1, r.hypothesis_met);
  fmt::print("min a0 = {:.6g} at r = {:.6g}  tail bound = {:.6g}\n", r.min_a0, r.min_a0_radius,
             r.tail_bound);
}

int cmd_perturb(const RunConfig& cfg) {
  const PerturbRun run = run_perturbation(cfg);
  emit_perturbation(cfg, run, std::nullopt);
  if (!run.report.hypothesis_met) fmt::print("note: delta/h exceeds 1/C1\n");
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const PerturbRun run = run_perturbation(cfg);
  std::optional<CriticalRatio> crit;
  if (cfg.bisect) {
    crit = critical_ratio(*run.data.fields, run.data.pert.r_star, run.data.pert.delta,
                          run.data.pert.Delta);
  }
  emit_perturbation(cfg, run, crit);
  bool ok = run.report.all_ok();
  for (const ClauseResult& c : run.report.clauses) {
    const char* tag = !c.applicable ? "n/a " : (c.ok ? "PASS" : "FAIL");
    fmt::print("{} {:<22} witness r = {:.6g}  violations = {}\n", tag, c.name, c.witness_radius,
               c.violations);
  }
  if (crit) {
    fmt::print("critical delta/h = {:.6g}  threshold = {:.6g}  conservative = {}\n",
               crit->ratio_critical, crit->ratio_threshold, crit->conservative);
    ok = ok && crit->conservative;
  }
  return ok ? kExitOk : kExitNumerical;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto t0 = std::chrono::system_clock::now();
  const SweepResult res = run_sweep(cfg);
  io::write_file(out_path(cfg, "sweep.csv"), sweep_csv(res));
  io::write_file(out_path(cfg, "fits.json"), fits_json(res));
  if (cfg.bisect) io::write_file(out_path(cfg, "bisection.csv"), bisection_csv(res));

  const auto t1 = std::chrono::system_clock::now();
  const std::time_t stamp = std::chrono::system_clock::to_time_t(t0);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&stamp));
  json manifest;
  manifest["started_utc"] = buf;
  manifest["elapsed_s"] = std::chrono::duration<double>(t1 - t0).count();
  manifest["workers"] = cfg.workers;
  manifest["kernels"] = kernels::active().name;
  manifest["points"] = res.rows.size();
  manifest["bisections"] = res.bisection.size();
  io::write_file(out_path(cfg, "run_manifest.json"), manifest.dump(2) + "\n");

  std::size_t failed = 0;
  for (const SweepRow& r : res.rows) failed += r.ok ? 0 : 1;
  fmt::print("{} points, {} failed to run\n", res.rows.size(), failed);
  bool conservative = true;
  for (const BisectionRow& b : res.bisection) {
    if (b.result) {
      fmt::print("k = {:.4g}  r* = {:.4g}  delta = {:.4g}: critical delta/h = {:.6g} >= {:.6g}: {}\n",
                 b.k, b.r_star, b.delta, b.result->ratio_critical, b.result->ratio_threshold,
                 b.result->conservative);
      conservative = conservative && b.result->conservative;
    } else {
      fmt::print("k = {:.4g}: bisection failed: {}\n", b.k, b.error);
      conservative = false;
    }
  }
  return failed == 0 && conservative ? kExitOk : kExitNumerical;
}

int cmd_plot(RunConfig cfg) {
  const std::string prof = out_path(cfg, "profile.csv");
  const std::string idata = out_path(cfg, "initial_data.csv");
  std::optional<double> k = cfg.k;
  const std::string asym = out_path(cfg, "asymptotics.json");
  if (!k && std::filesystem::exists(asym)) {
    std::ifstream in(asym);
    k = json::parse(in).at("k").get<double>();
  }
  const std::string report = out_path(cfg, "theorem_report.json");
  if (!k && std::filesystem::exists(report)) {
    std::ifstream in(report);
    k = json::parse(in).at("inputs").at("k").get<double>();
  }
  if (!k) throw DomainError("plot needs --k or an asymptotics.json / theorem_report.json in the output directory");
  const FluidModel model = FluidModel::make(*k, cfg.rho0);
  int made = 0;
  if (std::filesystem::exists(prof)) {
    plot_profile(cfg, load_csv(prof), model);
    made += 2;
  }
  if (std::filesystem::exists(idata)) {
    plot_initial_data(cfg, load_csv(idata), model);
    made += 2;
  }
  if (made == 0) throw DomainError("no profile.csv or initial_data.csv in " + cfg.out_dir);
  fmt::print("wrote {} plots to {}\n", made, cfg.out_dir);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static self-similar perfect-fluid stars and perturbed initial data without trapped surfaces"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "key = value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("TRAPID_OUT_DIR"); env && *env) cfg.out_dir = env;
  CliText text;

  app.add_option("--k", cfg.k, "Sound speed k, with p = k^2 rho (0 < k < 1)");
  app.add_option("--rho0", cfg.rho0, "Central density")->capture_default_str();
  app.add_option("--r-min", cfg.r_min, "Innermost node, units of L")->capture_default_str();
  app.add_option("--r-max", cfg.r_max, "Outermost node, units of L")->capture_default_str();
  app.add_option("--dr", cfg.dr, "Node spacing near the center, units of L")->capture_default_str();
  app.add_option("--points-per-decade", cfg.points_per_decade, "Node density in the tail")
      ->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Relative ODE tolerance")->capture_default_str();
  app.add_option("--window-lo", cfg.window_lo, "Asymptotic fit window start, units of L")
      ->capture_default_str();
  app.add_option("--window-hi", cfg.window_hi, "Asymptotic fit window end, units of L")
      ->capture_default_str();
  app.add_option("--r-star", cfg.r_star, "Center of the perturbed band, units of L")
      ->capture_default_str();
  app.add_option("--delta", cfg.delta, "Band half-width, units of L (default Delta/10)");
  app.add_option("--h", text.h, "Inverse kick size; number, inf, or auto (delta * C1)");
  app.add_option("--Delta", cfg.Delta, "Annulus width, units of L (default r-star/2)");
  app.add_option("--k-list", text.k_list, "Sweep values: a,b,c or lo:hi:n (log spaced)");
  app.add_option("--r-star-list", text.r_star_list, "Sweep values for r-star");
  app.add_option("--delta-list", text.delta_list, "Sweep values for delta");
  app.add_option("--h-list", text.h_list, "Sweep values for h");
  app.add_flag("--bisect", cfg.bisect, "Bisect for the critical delta/h");
  app.add_option("--out-dir", cfg.out_dir, "Output directory (env TRAPID_OUT_DIR)")
      ->capture_default_str();
  app.add_flag("--plot", cfg.plot, "Also write SVG plots");
  app.add_option("--workers", cfg.workers, "Sweep worker threads")->capture_default_str();

  auto* sub_static = app.add_subcommand("static", "Solve the static star; profile CSV and asymptotics JSON");
  auto* sub_perturb = app.add_subcommand("perturb", "Build perturbed initial data and its report");
  auto* sub_verify = app.add_subcommand("verify", "Like perturb, exit 1 if any theorem clause fails");
  auto* sub_sweep = app.add_subcommand("sweep", "Run a parameter sweep with scaling fits");
  auto* sub_plot = app.add_subcommand("plot", "Render SVGs from CSVs in the output directory");
  for (auto* s : {sub_static, sub_perturb, sub_verify, sub_sweep, sub_plot}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    finish_config(cfg, text);
    if (*sub_static) return cmd_static(cfg);
    if (*sub_perturb) return cmd_perturb(cfg);
    if (*sub_verify) return cmd_verify(cfg);
    if (*sub_sweep) return cmd_sweep(cfg);
    if (*sub_plot) return cmd_plot(cfg);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
