#include "mtcsim/steady.hpp"

#include <algorithm>
#include <cmath>

#include "mtcsim/assemble.hpp"
#include "mtcsim/error.hpp"
#include "mtcsim/io/hash.hpp"

namespace mtcsim {

SteadyResult solve_steady(const Discretization& disc, const SteadyOptions& options,
                          std::span<const double> initial) {
  if (!(options.damping > 0.0) || options.damping > 1.0) throw InputError("Picard damping must lie in (0, 1]");
  if (!(options.picard_tolerance > 0.0)) throw InputError("Picard tolerance must be positive");
  if (!initial.empty() && initial.size() != disc.size()) throw InputError("initial field has the wrong size");

  std::vector<double> current = initial.empty() ? std::vector<double>(disc.size(), disc.ambient_temperature())
                                                : std::vector<double>(initial.begin(), initial.end());
  SteadyResult out;
  const std::size_t max_outer = disc.constant_conductivity() ? 1 : std::max<std::size_t>(options.max_picard_iterations, 1);
  std::size_t cg_total = 0;
  std::vector<double> residuals;

  for (std::size_t outer = 0; outer < max_outer; ++outer) {
    const LinearSystem sys = assemble_steady(disc, current);
    const CgResult cg = solve_linear(sys, options.cg, current);
    cg_total += cg.iterations;
    residuals.push_back(cg.relative_residual);
    if (!cg.converged) {
      out.history.push_back({cg.iterations, cg.relative_residual, 0.0});
      out.message = "linear solve did not converge in Picard iteration " + std::to_string(outer + 1) +
                    " (relative residual " + std::to_string(cg.relative_residual) + ")";
      current = cg.x;
      break;
    }
    double change = 0.0;
    for (std::size_t u = 0; u < current.size(); ++u) {
      const double next = current[u] + options.damping * (cg.x[u] - current[u]);
      change = std::max(change, std::abs(next - current[u]));
      current[u] = next;
    }
    out.history.push_back({cg.iterations, cg.relative_residual, change});
    if (disc.constant_conductivity() || change <= options.picard_tolerance) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged && out.message.empty()) {
    out.message = "Picard iteration did not converge in " + std::to_string(max_outer) +
                  " iterations (last change " + std::to_string(out.history.back().max_change) + " K)";
  }
  for (double t : current) {
    if (!std::isfinite(t) || !(t > 0.0)) {
      out.converged = false;
      out.message = "steady solve produced a non-finite or non-positive temperature";
      break;
    }
  }

  out.field.values = disc.scatter(current);
  out.field.picard_iterations = out.history.size();
  out.field.cg_iterations = cg_total;
  out.field.residual_norms = std::move(residuals);
  return out;
}

SteadyResult solve_steady(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario,
                          const SteadyOptions& options) {
  auto result = solve_steady(Discretization(grid, materials, scenario), options);
  result.field.scenario_hash = scenario_hash(grid, materials, scenario);
  return result;
}

}  // namespace mtcsim
