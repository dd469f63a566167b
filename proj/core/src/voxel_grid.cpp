#include "mtcsim/voxel_grid.hpp"

#include <algorithm>
#include <cmath>

#include "mtcsim/error.hpp"

namespace mtcsim {

double VoxelMaterial::inplane_conductivity(const MaterialTable& table, double temperature) const {
  double k = 0.0;
  for (const auto& p : parts) k += p.weight * conductivity_at(table[p.material], temperature);
  return k;
}

double VoxelMaterial::through_conductivity(const MaterialTable& table, double temperature) const {
  if (parts.size() == 1 && parts.front().weight == 1.0) {
    return conductivity_at(table[parts.front().material], temperature);
  }
  double resistance = 0.0;
  for (const auto& p : parts) resistance += p.weight / conductivity_at(table[p.material], temperature);
  return 1.0 / resistance;
}

double VoxelMaterial::heat_capacity(const MaterialTable& table) const {
  double c = 0.0;
  for (const auto& p : parts) c += p.weight * table[p.material].volumetric_heat_capacity;
  return c;
}

bool VoxelMaterial::is_constant(const MaterialTable& table) const {
  return std::all_of(parts.begin(), parts.end(),
                     [&](const MaterialPart& p) { return table[p.material].conductivity.is_constant(); });
}

VoxelGrid VoxelGrid::uniform(int nx, int ny, int nz, double dx, double dy, double dz,
                             std::size_t material, const std::string& label) {
  VoxelGrid g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.dx = dx;
  g.dy = dy;
  g.dz = dz;
  g.voxel_materials.push_back(VoxelMaterial{label, {MaterialPart{material, 1.0}}});
  g.material_id.assign(g.size(), 0);
  g.void_mask.assign(g.size(), 0);
  g.regions["all"] = Region{IndexBox{{0, 0, 0}, {nx, ny, nz}}};
  return g;
}

IndexBox index_box(const VoxelGrid& grid, const Box& box) {
  IndexBox out;
  const auto d = grid.spacing();
  const auto n = grid.dims();
  for (int a = 0; a < 3; ++a) {
    // centers at origin + (i + 0.5) d; keep i with lo <= center <= hi
    const double lo = (box.lo[a] - grid.origin[a]) / d[a] - 0.5;
    const double hi = (box.hi[a] - grid.origin[a]) / d[a] - 0.5;
    constexpr double eps = 1e-9;
    out.lo[a] = std::clamp(static_cast<int>(std::ceil(lo - eps)), 0, n[a]);
    out.hi[a] = std::clamp(static_cast<int>(std::floor(hi + eps)) + 1, 0, n[a]);
  }
  return out;
}

std::vector<std::size_t> region_voxels(const VoxelGrid& grid, const Region& region) {
  std::vector<std::size_t> out;
  for (const auto& b : region) {
    for (int k = b.lo[2]; k < b.hi[2]; ++k)
      for (int j = b.lo[1]; j < b.hi[1]; ++j)
        for (int i = b.lo[0]; i < b.hi[0]; ++i) out.push_back(grid.index(i, j, k));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void validate_grid(const VoxelGrid& grid, const MaterialTable& table) {
  if (grid.nx < 1 || grid.ny < 1 || grid.nz < 1) throw InputError("voxel grid must have nx, ny, nz >= 1");
  if (!(grid.dx > 0.0) || !(grid.dy > 0.0) || !(grid.dz > 0.0)) {
    throw InputError("voxel spacings must be positive");
  }
  if (grid.material_id.size() != grid.size() || grid.void_mask.size() != grid.size()) {
    throw InputError("voxel grid arrays do not match its dimensions");
  }
  for (const auto& vm : grid.voxel_materials) {
    if (vm.parts.empty()) throw InputError("voxel material '" + vm.label + "' has no parts");
    for (const auto& p : vm.parts) {
      if (p.material >= table.size()) {
        throw InputError("voxel material '" + vm.label + "' references an unknown material");
      }
      if (!(p.weight > 0.0)) throw InputError("voxel material '" + vm.label + "' has a non-positive weight");
    }
  }
  for (std::size_t v = 0; v < grid.size(); ++v) {
    if (grid.is_void(v)) continue;
    if (grid.material_id[v] >= grid.voxel_materials.size()) {
      throw InputError("voxel " + std::to_string(v) + " has an unresolved material id");
    }
  }
}

}  // namespace mtcsim
