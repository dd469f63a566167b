#include "mtcsim/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mtcsim/error.hpp"

namespace mtcsim {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InputError("CSV has no column '" + std::string(name) + "'");
}

std::vector<double> CsvTable::values(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      throw InputError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                       " columns, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || ptr != c.data() + c.size()) {
        throw InputError(source + ":" + std::to_string(line_no) + ": not a number: '" + c + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw InputError(source + ": missing CSV header");
  return t;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path.string() + "'");
  return read_csv(in, path.string());
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_csv_file(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_csv(out, table);
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

CsvTable pt_curve_table(const PTCurve& curve) {
  CsvTable t{{"power_mW", "temperature_K"}, {}};
  for (const auto& s : curve.samples) t.rows.push_back({s.power * 1e3, s.temperature});
  return t;
}

PTCurve pt_curve_from(const CsvTable& table) {
  const std::size_t p = table.column("power_mW");
  const std::size_t temp = table.column("temperature_K");
  PTCurve c;
  for (const auto& r : table.rows) c.samples.push_back(PTSample{r[p] * 1e-3, r[temp]});
  return c;
}

std::vector<CalibrationSample> calibration_samples_from(const CsvTable& table) {
  const std::size_t t = table.column("temperature_K");
  const std::size_t v = table.column("voltage_V");
  std::vector<CalibrationSample> out;
  for (const auto& r : table.rows) out.push_back(CalibrationSample{r[t], r[v]});
  return out;
}

CsvTable trace_table(const TransientTrace& trace) {
  CsvTable t;
  t.header.push_back("t_seconds");
  for (const auto& n : trace.probe_names) t.header.push_back(n);
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    std::vector<double> row{trace.times[i]};
    for (const auto& s : trace.series) row.push_back(s[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace mtcsim
