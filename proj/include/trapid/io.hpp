#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trapid/ef_frame.hpp"
#include "trapid/static_star.hpp"
#include "trapid/trap_idata.hpp"

namespace trapid::io {

/// Fixed 17-significant-digit rendering used by every CSV writer.
std::string format_double(double x);

void write_profile_csv(std::ostream& os, const StaticProfile& profile);
void write_ef_csv(std::ostream& os, const EfStaticFields& fields);
void write_initial_data_csv(std::ostream& os, const InitialDataSet& data);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};
CsvTable read_csv(std::istream& is);

nlohmann::ordered_json asymptotics_json(const AsymptoticsReport& report, const StaticProfile& profile);
nlohmann::ordered_json theorem_report_json(const TheoremReport& report,
                                           const std::optional<ScalingFits>& fits = std::nullopt);
nlohmann::ordered_json exponent_fit_json(const ExponentFit& fit);

/// Writes text to path, creating parent directories. Throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace trapid::io
