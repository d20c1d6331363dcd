#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trapid/run_config.hpp"
#include "trapid/trap_idata.hpp"

namespace trapid {

/// One (k, r_star, delta, h) sample. Radii are geometric; h = NaN in the
/// request means "use delta * C1".
struct SweepRow {
  double k = 0.0;
  double r_star = 0.0;
  double delta = 0.0;
  double h = 0.0;
  double Delta = 0.0;
  bool ok = false;
  std::string error;
  TheoremReport report;
};

struct SweepGroupFit {
  double k = 0.0;
  double r_star = 0.0;
  std::optional<ScalingFits> fits;
  std::string note;
};

struct BisectionRow {
  double k = 0.0;
  double r_star = 0.0;
  double delta = 0.0;
  std::optional<CriticalRatio> result;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepGroupFit> fits;
  std::vector<BisectionRow> bisection;
};

/// Runs the cartesian product k x r_star x delta x h from the config lists
/// (falling back to the scalar values), each point with its own static solve.
/// Results are ordered by the product index, independent of `workers`.
SweepResult run_sweep(const RunConfig& config);

std::string sweep_csv(const SweepResult& result);
std::string fits_json(const SweepResult& result);
std::string bisection_csv(const SweepResult& result);

}  // namespace trapid
