#pragma once

#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "mtcsim/analysis/fit.hpp"
#include "mtcsim/flux.hpp"
#include "mtcsim/scenario.hpp"
#include "mtcsim/steady.hpp"

namespace mtcsim {

struct SweepOptions {
  SteadyOptions steady;
  /// Probe that defines the curve temperature; empty selects the first
  /// volume-average probe over the "sensor" region.
  std::string probe;
  std::size_t source_index = 0;  // source whose power is swept
  unsigned threads = 1;          // concurrent steady solves
};

struct SweepPoint {
  double power = 0.0;  // W
  std::string scenario_hash;
  std::vector<double> probe_values;  // K, in scenario probe order
  EnergyBalance balance;
  std::size_t picard_iterations = 0;
  std::size_t cg_iterations = 0;
};

/// Steady results keyed by scenario hash, shared across sweeps.
class SweepCache {
 public:
  bool lookup(const std::string& hash, SweepPoint& out) const;
  void store(const SweepPoint& point);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, SweepPoint> points_;
};

struct SweepResult {
  PTCurve curve;
  std::string probe;
  std::vector<std::string> probe_names;
  std::vector<SweepPoint> points;
};

/// Picks the probe a P–T curve reads: `requested` if given, else the first
/// average probe over "sensor".
std::string default_curve_probe(const ScenarioSpec& scenario, const std::string& requested);

/// One steady solve per power, results in input order. Solver failures are
/// rethrown with the failing power in the message.
SweepResult power_sweep(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario,
                        std::span<const double> powers, const SweepOptions& options = {},
                        SweepCache* cache = nullptr);

}  // namespace mtcsim
