#pragma once

#include <span>
#include <vector>

#include "mtcsim/discretization.hpp"
#include "mtcsim/field.hpp"
#include "mtcsim/scenario.hpp"
#include "mtcsim/voxel_grid.hpp"

namespace mtcsim {

/// Max or volume-weighted average over the region's voxels that carry a
/// temperature. Throws InputError when there are none.
double probe(const VoxelGrid& grid, const TemperatureField& field, const Region& region, Statistic statistic);
double probe(const VoxelGrid& grid, const TemperatureField& field, const RegionRef& region, Statistic statistic);

/// Probe regions pre-resolved to unknown indices, for repeated evaluation
/// during time stepping.
class ProbeSet {
 public:
  ProbeSet(const VoxelGrid& grid, const Discretization& disc, std::vector<ProbeSpec> probes);

  const std::vector<ProbeSpec>& specs() const { return specs_; }
  std::vector<double> evaluate(std::span<const double> unknowns) const;

 private:
  std::vector<ProbeSpec> specs_;
  std::vector<std::vector<std::size_t>> members_;
};

}  // namespace mtcsim
