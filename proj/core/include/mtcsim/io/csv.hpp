#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mtcsim/analysis/calibration.hpp"
#include "mtcsim/analysis/fit.hpp"
#include "mtcsim/transient.hpp"

namespace mtcsim {

/// Numeric CSV with a one-line header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index by header name; throws InputError if absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> values(std::string_view name) const;
};

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

CsvTable read_csv(std::istream& in, const std::string& source = "csv");
CsvTable read_csv_file(const std::filesystem::path& path);
void write_csv(std::ostream& out, const CsvTable& table);
/// Throws IoError when the file cannot be written.
void write_csv_file(const std::filesystem::path& path, const CsvTable& table);

/// `power_mW,temperature_K`
CsvTable pt_curve_table(const PTCurve& curve);
PTCurve pt_curve_from(const CsvTable& table);

/// `temperature_K,voltage_V`
std::vector<CalibrationSample> calibration_samples_from(const CsvTable& table);

/// `t_seconds,<probe names...>`
CsvTable trace_table(const TransientTrace& trace);

}  // namespace mtcsim
