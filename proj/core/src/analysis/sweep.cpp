#include "mtcsim/analysis/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "mtcsim/error.hpp"
#include "mtcsim/io/hash.hpp"
#include "mtcsim/probe.hpp"

namespace mtcsim {

bool SweepCache::lookup(const std::string& hash, SweepPoint& out) const {
  std::lock_guard lock(mutex_);
  const auto it = points_.find(hash);
  if (it == points_.end()) return false;
  out = it->second;
  return true;
}

void SweepCache::store(const SweepPoint& point) {
  std::lock_guard lock(mutex_);
  points_.emplace(point.scenario_hash, point);
}

std::size_t SweepCache::size() const {
  std::lock_guard lock(mutex_);
  return points_.size();
}

std::string default_curve_probe(const ScenarioSpec& scenario, const std::string& requested) {
  if (!requested.empty()) {
    scenario.probe(requested);
    return requested;
  }
  for (const auto& p : scenario.probes) {
    if (!p.region.box && p.region.name == "sensor" && p.statistic == Statistic::average) return p.name;
  }
  throw InputError("no probe given and the scenario has no average probe over the sensor region");
}

namespace {

std::string describe_power(double watts) { return std::to_string(watts * 1e3) + " mW"; }

SweepPoint solve_point(const VoxelGrid& grid, const MaterialTable& materials, ScenarioSpec scenario, double power,
                       const SweepOptions& options, SweepCache* cache) {
  scenario.sources[options.source_index].power = power;
  SweepPoint point;
  point.power = power;
  point.scenario_hash = scenario_hash(grid, materials, scenario);
  if (cache && cache->lookup(point.scenario_hash, point)) return point;

  try {
    const Discretization disc(grid, materials, scenario);
    const SteadyResult res = solve_steady(disc, options.steady);
    if (!res.converged) throw SolverError(res.message);
    for (const auto& p : scenario.probes) {
      point.probe_values.push_back(probe(grid, res.field, p.region, p.statistic));
    }
    point.balance = energy_balance(disc, res.field);
    point.picard_iterations = res.field.picard_iterations;
    point.cg_iterations = res.field.cg_iterations;
  } catch (const SolverError& e) {
    throw SolverError("power sweep at " + describe_power(power) + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError("power sweep at " + describe_power(power) + ": " + e.what());
  }
  if (cache) cache->store(point);
  return point;
}

}  // namespace

SweepResult power_sweep(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario,
                        std::span<const double> powers, const SweepOptions& options, SweepCache* cache) {
  if (powers.empty()) throw InputError("power sweep needs at least one power");
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] >= 0.0) || !std::isfinite(powers[i])) throw InputError("sweep powers must be finite and >= 0");
    if (i > 0 && !(powers[i] > powers[i - 1])) throw InputError("sweep powers must strictly increase");
  }
  if (options.source_index >= scenario.sources.size()) {
    throw InputError("power sweep: the scenario has no source #" + std::to_string(options.source_index));
  }

  SweepResult out;
  out.probe = default_curve_probe(scenario, options.probe);
  std::size_t probe_column = 0;
  for (const auto& p : scenario.probes) {
    if (p.name == out.probe) probe_column = out.probe_names.size();
    out.probe_names.push_back(p.name);
  }
  out.points.resize(powers.size());

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(powers.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < powers.size(); ++i) {
      out.points[i] = solve_point(grid, materials, scenario, powers[i], options, cache);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(powers.size());
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < powers.size(); i = next++) {
            try {
              out.points[i] = solve_point(grid, materials, scenario, powers[i], options, cache);
            } catch (...) {
              errors[i] = std::current_exception();
            }
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (const auto& p : out.points) {
    out.curve.samples.push_back(PTSample{p.power, p.probe_values[probe_column]});
  }
  return out;
}

}  // namespace mtcsim
