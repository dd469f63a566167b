#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtcsim/cg.hpp"
#include "mtcsim/discretization.hpp"
#include "mtcsim/field.hpp"
#include "mtcsim/scenario.hpp"

namespace mtcsim {

struct TransientOptions {
  double t_end = 0.0;  // s
  double dt = 0.0;     // s; the last step is shortened to land on t_end
  CgOptions cg;
  std::vector<double> snapshot_times;  // s; field captured at the first step reaching each time
};

/// Probe statistics sampled at every time step.
struct TransientTrace {
  std::vector<double> times;                // s, strictly increasing, times[0] = 0
  std::vector<double> step_sizes;           // s, one per step
  std::vector<std::string> probe_names;
  std::vector<std::vector<double>> series;  // [probe][sample], K
  std::string scheme = "backward-euler";
  bool ok = true;  // false when a linear solve failed and the trace was truncated
  std::string message;

  std::span<const double> column(std::string_view probe) const;
};

struct TransientResult {
  TransientTrace trace;
  TemperatureField final_field;
  std::vector<std::pair<double, TemperatureField>> snapshots;
  std::size_t cg_iterations = 0;
};

/// Backward-Euler time stepping of C dT/dt = div(k grad T) + Q:
/// (C/dt + K(T_n)) T_{n+1} = C/dt T_n + b. Conductivities are refreshed from
/// the previous step's field. `initial` is per unknown; empty means ambient.
TransientResult run_transient(const VoxelGrid& grid, const Discretization& disc,
                              const std::vector<ProbeSpec>& probes, std::span<const double> initial,
                              const TransientOptions& options);

/// Convenience form: probes from the scenario, initial field optional.
TransientResult run_transient(const VoxelGrid& grid, const MaterialTable& materials,
                              const ScenarioSpec& scenario, const TemperatureField* initial,
                              const TransientOptions& options);

}  // namespace mtcsim
