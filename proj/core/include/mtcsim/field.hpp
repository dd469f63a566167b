#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace mtcsim {

/// Solved temperatures, one entry per grid voxel; voxels without an unknown
/// (vacuum-mode void) hold NaN.
struct TemperatureField {
  std::vector<double> values;  // K
  std::string scenario_hash;
  std::size_t picard_iterations = 0;
  std::size_t cg_iterations = 0;
  std::vector<double> residual_norms;  // final CG relative residual per outer iteration

  bool has(std::size_t voxel) const { return !std::isnan(values[voxel]); }
  double operator[](std::size_t voxel) const { return values[voxel]; }
  std::size_t size() const { return values.size(); }
};

}  // namespace mtcsim
