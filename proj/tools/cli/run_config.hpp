#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mtcsim/geometry.hpp"
#include "mtcsim/material.hpp"
#include "mtcsim/scenario.hpp"
#include "mtcsim/steady.hpp"

namespace mtcsim::cli {

struct TransientSettings {
  double t_end = 0.0;  // s
  double dt = 0.0;     // s
  std::vector<double> snapshot_times;
};

struct SweepSettings {
  std::vector<double> powers;       // W
  std::string probe;                // empty: sensor-region average
  std::vector<double> rth_powers;   // W, where the fitted R_th is tabulated
  std::optional<std::filesystem::path> import_csv;  // fit this P–T curve instead of simulating
};

struct CalibrateSettings {
  std::filesystem::path samples_csv;
  double bias_current = 0.0;  // A
  std::optional<std::filesystem::path> apply_csv;
  std::string voltage_column = "voltage_V";
};

struct ReportSettings {
  std::vector<std::filesystem::path> artifacts;
  double target_temperature = 600.0;  // K
  double power_budget = 20e-3;        // W
};

/// One batch run. Paths are resolved against the config file's directory.
/// Sections that a command does not use may be absent.
struct RunConfig {
  std::filesystem::path base_dir;
  std::filesystem::path output_dir = "out";

  std::optional<std::filesystem::path> device;
  std::optional<std::filesystem::path> materials;
  std::string scenario_json;  // scenario document (file contents or inline)
  std::optional<Resolution> resolution;

  SteadyOptions solver;
  bool gnuplot = false;

  std::optional<TransientSettings> transient;
  std::optional<SweepSettings> sweep;
  std::optional<CalibrateSettings> calibrate;
  std::optional<ReportSettings> report;
};

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Device + materials + scenario + resolution, loaded and voxelized.
struct Model {
  HotplateSpec spec;
  Resolution resolution;
  MaterialTable materials;
  ScenarioSpec scenario;
};

/// Throws InputError naming the first missing section.
Model load_model(const RunConfig& config);

}  // namespace mtcsim::cli
