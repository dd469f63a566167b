#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mtcsim/material.hpp"
#include "mtcsim/scenario.hpp"
#include "mtcsim/voxel_grid.hpp"

namespace mtcsim {

/// Streaming 64-bit FNV-1a.
class Fnv1a {
 public:
  void update(const void* data, std::size_t size);
  void update(std::string_view s);
  void update(double v);
  void update(std::int64_t v);
  std::uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// Hash of the discretized model: grid content, materials, ambient and
/// boundary setup, probes, and source regions, but not source powers.
/// Artifacts of one device/material/resolution setup share it.
std::string model_hash(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario);

/// model_hash plus the source powers: identifies one solve.
std::string scenario_hash(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario);

}  // namespace mtcsim
