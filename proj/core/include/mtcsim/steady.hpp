#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtcsim/cg.hpp"
#include "mtcsim/discretization.hpp"
#include "mtcsim/field.hpp"

namespace mtcsim {

struct SteadyOptions {
  CgOptions cg;
  double picard_tolerance = 1e-6;  // K, max change between outer iterations
  std::size_t max_picard_iterations = 100;
  double damping = 1.0;  // in (0, 1]
};

struct PicardStep {
  std::size_t cg_iterations = 0;
  double cg_residual = 0.0;
  double max_change = 0.0;  // K
};

struct SteadyResult {
  TemperatureField field;
  bool converged = false;
  std::vector<PicardStep> history;
  std::string message;
};

/// Steady conduction with temperature-dependent conductivity by Picard
/// iteration: assemble with k(T_prev), solve, relax, repeat until the max
/// change is within tolerance. All-constant-k problems take exactly one pass.
/// `initial` (per unknown) defaults to the ambient temperature.
SteadyResult solve_steady(const Discretization& disc, const SteadyOptions& options = {},
                          std::span<const double> initial = {});

SteadyResult solve_steady(const VoxelGrid& grid, const MaterialTable& materials,
                          const ScenarioSpec& scenario, const SteadyOptions& options = {});

}  // namespace mtcsim
