#include "trapid/io.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "trapid/errors.hpp"

namespace trapid::io {

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

namespace {

void write_rows(std::ostream& os, const char* header,
                std::initializer_list<const std::vector<double>*> cols, std::span<const double> r) {
  os << header << '\n';
  std::string line;
  for (std::size_t i = 0; i < r.size(); ++i) {
    line = format_double(r[i]);
    for (const auto* c : cols) {
      line += ',';
      line += format_double((*c)[i]);
    }
    os << line << '\n';
  }
}

}  // namespace

void write_profile_csv(std::ostream& os, const StaticProfile& p) {
  std::vector<double> a(p.size()), b(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    a[i] = p.a(i);
    b[i] = std::exp(p.lambda[i] + p.nu[i]);
  }
  write_rows(os, "r,rho,m,lambda,nu,a,b", {&p.rho, &p.m, &p.lambda, &p.nu, &a, &b}, p.grid.nodes());
}

void write_ef_csv(std::ostream& os, const EfStaticFields& f) {
  write_rows(os, "r,a,b,M,V,v_shift", {&f.a, &f.b, &f.M, &f.V, &f.v_shift}, f.grid.nodes());
}

void write_initial_data_csv(std::ostream& os, const InitialDataSet& d) {
  write_rows(os, "r,M0,V0,a0,b0,a1,av", {&d.M0, &d.V0, &d.a0, &d.b0, &d.a1, &d.av},
             d.grid.nodes());
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return columns[j];
  }
  throw DomainError("CSV has no column '" + name + "'");
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw DomainError("CSV is empty");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  t.columns.resize(t.header.size());
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::size_t j = 0;
    for (std::string cell; std::getline(ls, cell, ','); ++j) {
      if (j >= t.columns.size()) throw DomainError("CSV row " + std::to_string(row) + " too long");
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cell.size()) {
        throw DomainError("CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
      t.columns[j].push_back(v);
    }
    if (j != t.columns.size()) throw DomainError("CSV row " + std::to_string(row) + " too short");
  }
  return t;
}

nlohmann::ordered_json asymptotics_json(const AsymptoticsReport& rep, const StaticProfile& p) {
  const double L = p.model.length_scale();
  const auto cand = b_constant_candidates(p.model);
  const auto diag = diagnose(p);
  nlohmann::ordered_json j;
  j["a_limit_est"] = rep.a_limit_est;
  j["b_exponent_est"] = rep.b_exponent_est;
  j["rho_coeff_est"] = rep.rho_coeff_est;
  j["window"] = {rep.window.lo, rep.window.hi};
  j["residuals"] = {{"a_limit", rep.residuals.a_limit},
                    {"b_exponent", rep.residuals.b_exponent},
                    {"rho_coeff", rep.residuals.rho_coeff},
                    {"b_constant", rep.residuals.b_constant}};
  j["window_in_L"] = {rep.window.lo / L, rep.window.hi / L};
  j["samples"] = rep.samples;
  j["k"] = p.model.k;
  j["rho0"] = p.model.rho0;
  j["length_scale"] = L;
  j["alpha"] = p.model.alpha();
  j["a_limit_expected"] = 1.0 - p.model.alpha();
  j["b_exponent_expected"] = 2.0 * p.model.nu_exponent();
  j["rho_coeff_expected"] = singular_density_coefficient(p.model.k);
  j["b_constant_est"] = rep.b_constant_est;
  j["b_constant_tov"] = cand.tov;
  j["b_constant_alternate"] = cand.alternate;
  j["profile"] = {{"a_min", diag.a_min},
                  {"a_min_radius", diag.a_min_radius},
                  {"a_monotone", diag.a_monotone},
                  {"first_undershoot_radius", diag.first_undershoot_radius},
                  {"rho_decreasing", diag.rho_decreasing},
                  {"b_increasing", diag.b_increasing}};
  return j;
}

nlohmann::ordered_json exponent_fit_json(const ExponentFit& f) {
  return {{"exp_delta", f.exp_delta},
          {"exp_h", f.exp_h},
          {"log_prefactor", f.log_prefactor},
          {"ci_delta", {f.ci_delta_lo, f.ci_delta_hi}},
          {"ci_h", {f.ci_h_lo, f.ci_h_hi}},
          {"residual_rms", f.residual_rms},
          {"points", f.points}};
}

nlohmann::ordered_json theorem_report_json(const TheoremReport& r,
                                           const std::optional<ScalingFits>& fits) {
  nlohmann::ordered_json j;
  j["C1"] = r.constants.C1;
  j["C4_prefactor"] = r.constants.C4_prefactor;
  j["delta_over_h"] = r.delta_over_h;
  j["hypothesis_met"] = r.hypothesis_met;
  j["min_a0"] = r.min_a0;
  j["min_a0_radius"] = r.min_a0_radius;
  auto clauses = nlohmann::ordered_json::array();
  for (const auto& c : r.clauses) {
    clauses.push_back({{"name", c.name},
                       {"ok", c.ok},
                       {"witness_radius", c.witness_radius},
                       {"violations", c.violations},
                       {"applicable", c.applicable}});
  }
  j["clauses"] = clauses;
  if (fits) {
    j["fits"] = {{"band", exponent_fit_json(fits->band)},
                 {"annulus", exponent_fit_json(fits->annulus)}};
  } else {
    j["fits"] = nullptr;
  }
  j["inputs"] = {{"k", r.model.k},          {"rho0", r.model.rho0},
                 {"r_star", r.pert.r_star}, {"delta", r.pert.delta},
                 {"h", std::isinf(r.pert.h) ? nlohmann::ordered_json(nullptr)
                                            : nlohmann::ordered_json(r.pert.h)},
                 {"Delta", r.pert.Delta},   {"length_scale", r.model.length_scale()}};
  j["C4_band_bound"] = r.band_bound;
  j["C4_over_h2_bound"] = r.c4_bound;
  j["b_at_three_halves"] = r.constants.b_at_three_halves;
  j["tail_bound"] = r.tail_bound;
  j["band_sup_av"] = r.band_sup_av;
  j["band_min_av"] = r.band_min_av;
  j["annulus_sup_av"] = r.annulus_sup_av;
  j["max_abs_a1"] = r.max_abs_a1;
  j["forms_max_rel_gap"] = r.forms_max_rel_gap;
  j["all_ok"] = r.all_ok();
  return j;
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace trapid::io
