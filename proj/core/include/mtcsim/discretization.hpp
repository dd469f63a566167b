#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mtcsim/material.hpp"
#include "mtcsim/scenario.hpp"
#include "mtcsim/voxel_grid.hpp"

namespace mtcsim {

/// Voxel <-> unknown numbering. Unknowns follow voxel order.
struct UnknownMap {
  std::vector<std::int64_t> voxel_to_unknown;  // -1 where the voxel carries no unknown
  std::vector<std::size_t> unknown_to_voxel;

  std::size_t size() const { return unknown_to_voxel.size(); }
};

/// Coupling of one unknown to a fixed-temperature face: conductance
/// k·factor with factor = face area / half voxel spacing.
struct DirichletLink {
  std::size_t unknown = 0;
  int axis = 0;
  double factor = 0.0;
  double temperature = 0.0;
};

struct SourceShare {
  std::string name;
  double declared = 0.0;                // W
  double density = 0.0;                 // W/m^3 over the source voxels
  std::vector<std::size_t> unknowns;
};

/// Everything the solvers need from grid + materials + scenario: unknowns,
/// their materials, boundary couplings, and the heat source distribution.
/// Built once, immutable afterwards.
class Discretization {
 public:
  Discretization(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario);

  std::size_t size() const { return map_->size(); }
  const std::shared_ptr<const UnknownMap>& map() const { return map_; }
  const std::array<int, 3>& dims() const { return dims_; }
  const std::array<double, 3>& spacing() const { return spacing_; }
  double voxel_volume() const { return spacing_[0] * spacing_[1] * spacing_[2]; }
  double ambient_temperature() const { return ambient_; }
  const MaterialTable& materials() const { return materials_; }

  /// Conductivity of unknown `u` along `axis` (z is through-plane) at temperature T.
  double conductivity(std::size_t u, int axis, double temperature) const;
  /// Heat capacity of unknown `u`'s voxel, J/K.
  double capacity(std::size_t u) const;
  bool constant_conductivity() const { return constant_k_; }

  const std::vector<DirichletLink>& dirichlet() const { return dirichlet_; }
  const std::vector<SourceShare>& sources() const { return sources_; }
  /// Injected power per unknown, W.
  const std::vector<double>& source_power() const { return source_power_; }

  /// Neighbor unknown of `u` across its face (axis, +1/-1), or -1.
  std::int64_t neighbor(std::size_t u, int axis, int side) const;

  /// Unknown values -> per-voxel vector (NaN where no unknown).
  std::vector<double> scatter(std::span<const double> unknowns) const;
  /// Per-voxel vector -> unknown values.
  std::vector<double> gather(std::span<const double> voxels) const;

 private:
  std::shared_ptr<const UnknownMap> map_;
  std::array<int, 3> dims_{};
  std::array<double, 3> spacing_{};
  double ambient_ = 300.0;
  MaterialTable materials_;
  std::vector<VoxelMaterial> voxel_materials_;
  std::vector<std::uint16_t> unknown_material_;
  std::vector<double> capacity_;
  bool constant_k_ = true;
  std::vector<DirichletLink> dirichlet_;
  std::vector<SourceShare> sources_;
  std::vector<double> source_power_;
};

struct PowerReport {
  std::vector<std::pair<std::string, double>> per_source;  // W
  double total = 0.0;                                      // W
};

/// Volume integral of the discretized source density, per source and total.
PowerReport integrate_power(const Discretization& disc);
PowerReport integrate_power(const VoxelGrid& grid, const MaterialTable& materials,
                            const ScenarioSpec& scenario);

}  // namespace mtcsim
