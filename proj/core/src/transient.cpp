#include "mtcsim/transient.hpp"

#include <algorithm>
#include <cmath>

#include "mtcsim/assemble.hpp"
#include "mtcsim/error.hpp"
#include "mtcsim/probe.hpp"

namespace mtcsim {

std::span<const double> TransientTrace::column(std::string_view probe) const {
  for (std::size_t i = 0; i < probe_names.size(); ++i) {
    if (probe_names[i] == probe) return series[i];
  }
  throw InputError("trace has no probe '" + std::string(probe) + "'");
}

TransientResult run_transient(const VoxelGrid& grid, const Discretization& disc, const std::vector<ProbeSpec>& probes,
                              std::span<const double> initial, const TransientOptions& options) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw InputError("time step dt must be positive");
  if (!(options.t_end > 0.0) || !std::isfinite(options.t_end)) throw InputError("t_end must be positive");
  if (!initial.empty() && initial.size() != disc.size()) throw InputError("initial field has the wrong size");

  const ProbeSet probe_set(grid, disc, probes);
  TransientResult out;
  auto& trace = out.trace;
  for (const auto& p : probes) trace.probe_names.push_back(p.name);
  trace.series.assign(probes.size(), {});

  std::vector<double> current = initial.empty() ? std::vector<double>(disc.size(), disc.ambient_temperature())
                                                : std::vector<double>(initial.begin(), initial.end());
  const auto record = [&](double t) {
    trace.times.push_back(t);
    const auto values = probe_set.evaluate(current);
    for (std::size_t p = 0; p < values.size(); ++p) trace.series[p].push_back(values[p]);
  };
  record(0.0);

  std::vector<double> pending = options.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  const auto take_snapshots = [&](double t) {
    while (next_snapshot < pending.size() && pending[next_snapshot] <= t * (1 + 1e-12)) {
      TemperatureField f;
      f.values = disc.scatter(current);
      out.snapshots.emplace_back(t, std::move(f));
      ++next_snapshot;
    }
  };
  take_snapshots(0.0);

  const auto steps = static_cast<std::size_t>(std::ceil(options.t_end / options.dt - 1e-9));
  const bool constant = disc.constant_conductivity();
  LinearSystem stiffness;
  LinearSystem system;
  double system_dt = -1.0;
  double t = 0.0;
  std::vector<double> previous;
  double previous_dt = 0.0;

  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_next = n == steps ? options.t_end : static_cast<double>(n) * options.dt;
    const double dt = t_next - t;
    if (!constant || n == 1) stiffness = assemble_steady(disc, current);
    if (!constant || dt != system_dt) {
      system = stiffness;
      add_backward_euler_mass(system, disc, dt, current);
      system_dt = dt;
    } else {
      for (std::size_t u = 0; u < current.size(); ++u) {
        const double c = disc.capacity(u) / dt;
        system.rhs[u] = stiffness.rhs[u] + c * current[u];
        system.deviation_rhs[u] = stiffness.deviation_rhs[u] + c * (current[u] - system.reference_temperature);
      }
    }
    // Linear extrapolation of the last two states is a better starting guess
    // than the previous state alone.
    std::vector<double> guess = current;
    if (!previous.empty()) {
      const double ratio = dt / previous_dt;
      for (std::size_t u = 0; u < guess.size(); ++u) guess[u] += ratio * (current[u] - previous[u]);
    }
    const CgResult cg = solve_linear(system, options.cg, guess);
    out.cg_iterations += cg.iterations;
    if (!cg.converged) {
      trace.ok = false;
      trace.message = "linear solve failed at t = " + std::to_string(t_next) + " s (relative residual " +
                      std::to_string(cg.relative_residual) + "); trace truncated";
      break;
    }
    previous = std::move(current);
    previous_dt = dt;
    current = cg.x;
    t = t_next;
    trace.step_sizes.push_back(dt);
    record(t);
    take_snapshots(t);
  }

  out.final_field.values = disc.scatter(current);
  return out;
}

TransientResult run_transient(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario,
                              const TemperatureField* initial, const TransientOptions& options) {
  const Discretization disc(grid, materials, scenario);
  std::vector<double> init;
  if (initial) init = disc.gather(initial->values);
  return run_transient(grid, disc, scenario.probes, init, options);
}

}  // namespace mtcsim
