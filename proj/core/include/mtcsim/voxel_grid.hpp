#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtcsim/geometry.hpp"
#include "mtcsim/material.hpp"

namespace mtcsim {

/// Half-open range of voxel indices [lo, hi) per axis.
struct IndexBox {
  std::array<int, 3> lo{};
  std::array<int, 3> hi{};

  bool empty() const { return hi[0] <= lo[0] || hi[1] <= lo[1] || hi[2] <= lo[2]; }
  long long count() const {
    return empty() ? 0LL
                   : 1LL * (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }
};

/// Union of index boxes.
using Region = std::vector<IndexBox>;

struct MaterialPart {
  std::size_t material = 0;  // index into the MaterialTable
  double weight = 1.0;       // physical thickness / voxel height
};

/// Effective material of one voxel: a base material (weight 1) plus any thin
/// films collapsed into it. In-plane conduction adds the parts in parallel,
/// through-plane (z) conduction adds them in series.
struct VoxelMaterial {
  std::string label;
  std::vector<MaterialPart> parts;

  double inplane_conductivity(const MaterialTable& table, double temperature) const;
  double through_conductivity(const MaterialTable& table, double temperature) const;
  double heat_capacity(const MaterialTable& table) const;  // J/(m^3·K) of the voxel
  bool is_constant(const MaterialTable& table) const;
};

inline constexpr std::uint16_t kVoidMaterial = 0xFFFF;

/// Regular voxel lattice. Index order is x fastest, then y, then z.
struct VoxelGrid {
  int nx = 1, ny = 1, nz = 1;
  double dx = 1.0, dy = 1.0, dz = 1.0;  // m
  std::array<double, 3> origin{};       // lower corner, device coordinates
  std::vector<std::uint16_t> material_id;
  std::vector<std::uint8_t> void_mask;
  std::vector<VoxelMaterial> voxel_materials;
  std::map<std::string, Region> regions;

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny * nz; }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * ny + j) * nx + i;
  }
  std::array<int, 3> coords(std::size_t v) const {
    const int i = static_cast<int>(v % nx);
    const int j = static_cast<int>((v / nx) % ny);
    const int k = static_cast<int>(v / (static_cast<std::size_t>(nx) * ny));
    return {i, j, k};
  }
  std::array<int, 3> dims() const { return {nx, ny, nz}; }
  std::array<double, 3> spacing() const { return {dx, dy, dz}; }
  double voxel_volume() const { return dx * dy * dz; }
  std::array<double, 3> center(int i, int j, int k) const {
    return {origin[0] + (i + 0.5) * dx, origin[1] + (j + 0.5) * dy, origin[2] + (k + 0.5) * dz};
  }
  bool is_void(std::size_t v) const { return void_mask[v] != 0; }

  /// All-solid nx×ny×nz block of one material, origin at 0.
  static VoxelGrid uniform(int nx, int ny, int nz, double dx, double dy, double dz,
                           std::size_t material, const std::string& label = "solid");
};

/// Index box of voxels whose centers lie inside `box`.
IndexBox index_box(const VoxelGrid& grid, const Box& box);

/// Sorted, de-duplicated voxel indices of a region (void voxels included).
std::vector<std::size_t> region_voxels(const VoxelGrid& grid, const Region& region);

/// Checks the grid invariants: positive dimensions and spacings, consistent
/// array sizes, and every non-void voxel resolving to table materials.
void validate_grid(const VoxelGrid& grid, const MaterialTable& table);

}  // namespace mtcsim
