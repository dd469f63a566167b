#include "mtcsim/discretization.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "mtcsim/error.hpp"
#include "summation.hpp"

namespace mtcsim {

Discretization::Discretization(const VoxelGrid& grid, const MaterialTable& materials,
                               const ScenarioSpec& scenario)
    : dims_(grid.dims()), spacing_(grid.spacing()), ambient_(scenario.ambient_temperature),
      materials_(materials), voxel_materials_(grid.voxel_materials) {
  validate_grid(grid, materials);
  if (!(ambient_ > 0.0) || !std::isfinite(ambient_)) throw InputError("ambient temperature must be > 0 K");

  std::uint16_t ambient_id = kVoidMaterial;
  if (scenario.ambient_mode == AmbientMode::still_air) {
    const std::size_t m = materials.index_of(scenario.ambient_material);
    voxel_materials_.push_back(VoxelMaterial{scenario.ambient_material, {MaterialPart{m, 1.0}}});
    ambient_id = static_cast<std::uint16_t>(voxel_materials_.size() - 1);
  }

  auto map = std::make_shared<UnknownMap>();
  map->voxel_to_unknown.assign(grid.size(), -1);
  for (std::size_t v = 0; v < grid.size(); ++v) {
    if (grid.is_void(v) && ambient_id == kVoidMaterial) continue;
    map->voxel_to_unknown[v] = static_cast<std::int64_t>(map->unknown_to_voxel.size());
    map->unknown_to_voxel.push_back(v);
    unknown_material_.push_back(grid.is_void(v) ? ambient_id : grid.material_id[v]);
  }
  map_ = map;
  if (map_->size() == 0) throw InputError("the grid has no conducting voxels");

  const double volume = voxel_volume();
  capacity_.resize(size());
  for (std::size_t u = 0; u < size(); ++u) {
    const auto& vm = voxel_materials_[unknown_material_[u]];
    capacity_[u] = vm.heat_capacity(materials_) * volume;
    if (!vm.is_constant(materials_)) constant_k_ = false;
  }

  // Fixed-temperature faces.
  const std::array<double, 3> area{spacing_[1] * spacing_[2], spacing_[0] * spacing_[2],
                                   spacing_[0] * spacing_[1]};
  for (const auto& bc : scenario.boundary) {
    const int axis = static_cast<int>(bc.face) / 2;
    const bool upper = static_cast<int>(bc.face) % 2 == 1;
    const double t = bc.temperature.value_or(ambient_);
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("boundary temperature must be > 0 K");
    const int layer = upper ? dims_[axis] - 1 : 0;
    for (std::size_t u = 0; u < size(); ++u) {
      const auto c = grid.coords(map_->unknown_to_voxel[u]);
      if (c[axis] != layer) continue;
      if (!bc.materials.empty()) {
        const auto& base = materials_[voxel_materials_[unknown_material_[u]].parts.front().material].name;
        bool listed = false;
        for (const auto& name : bc.materials) listed = listed || name == base;
        if (!listed) continue;
      }
      dirichlet_.push_back(DirichletLink{u, axis, area[axis] / (0.5 * spacing_[axis]), t});
    }
  }
  if (dirichlet_.empty()) {
    throw SolverError("singular system: no fixed-temperature boundary touches a conducting voxel");
  }

  // Every unknown must reach a fixed-temperature face.
  std::vector<std::uint8_t> reached(size(), 0);
  std::queue<std::size_t> frontier;
  for (const auto& d : dirichlet_) {
    if (!reached[d.unknown]) {
      reached[d.unknown] = 1;
      frontier.push(d.unknown);
    }
  }
  std::size_t reached_count = frontier.size();
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (int axis = 0; axis < 3; ++axis) {
      for (int side : {-1, 1}) {
        const auto w = neighbor(u, axis, side);
        if (w >= 0 && !reached[static_cast<std::size_t>(w)]) {
          reached[static_cast<std::size_t>(w)] = 1;
          ++reached_count;
          frontier.push(static_cast<std::size_t>(w));
        }
      }
    }
  }
  if (reached_count != size()) {
    for (std::size_t u = 0; u < size(); ++u) {
      if (!reached[u]) {
        const auto c = grid.coords(map_->unknown_to_voxel[u]);
        throw SolverError("singular system: " + std::to_string(size() - reached_count) +
                          " voxels are not connected to any fixed-temperature boundary (first at " +
                          std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")");
      }
    }
  }

  source_power_.assign(size(), 0.0);
  for (const auto& src : scenario.sources) {
    if (!std::isfinite(src.power)) throw InputError("source '" + src.name + "' has a non-finite power");
    SourceShare share;
    share.name = src.name;
    share.declared = src.power;
    for (std::size_t v : region_voxels(grid, resolve_region(grid, src.region))) {
      if (grid.is_void(v)) continue;
      share.unknowns.push_back(static_cast<std::size_t>(map_->voxel_to_unknown[v]));
    }
    if (share.unknowns.empty()) {
      throw InputError("source '" + src.name + "': region '" + src.region.label() +
                       "' contains zero non-void voxels");
    }
    share.density = src.power / (static_cast<double>(share.unknowns.size()) * volume);
    const double per_voxel = share.density * volume;
    for (std::size_t u : share.unknowns) source_power_[u] += per_voxel;
    sources_.push_back(std::move(share));
  }
}

double Discretization::conductivity(std::size_t u, int axis, double temperature) const {
  const auto& vm = voxel_materials_[unknown_material_[u]];
  return axis == 2 ? vm.through_conductivity(materials_, temperature)
                   : vm.inplane_conductivity(materials_, temperature);
}

double Discretization::capacity(std::size_t u) const { return capacity_[u]; }

std::int64_t Discretization::neighbor(std::size_t u, int axis, int side) const {
  const std::size_t v = map_->unknown_to_voxel[u];
  const std::size_t nx = static_cast<std::size_t>(dims_[0]);
  const std::size_t nxy = nx * static_cast<std::size_t>(dims_[1]);
  const std::array<std::size_t, 3> c{v % nx, (v / nx) % static_cast<std::size_t>(dims_[1]), v / nxy};
  const std::array<std::size_t, 3> stride{1, nx, nxy};
  if (side < 0 && c[axis] == 0) return -1;
  if (side > 0 && c[axis] + 1 == static_cast<std::size_t>(dims_[axis])) return -1;
  const std::size_t w = side < 0 ? v - stride[axis] : v + stride[axis];
  return map_->voxel_to_unknown[w];
}

std::vector<double> Discretization::scatter(std::span<const double> unknowns) const {
  std::vector<double> out(map_->voxel_to_unknown.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t u = 0; u < unknowns.size(); ++u) out[map_->unknown_to_voxel[u]] = unknowns[u];
  return out;
}

std::vector<double> Discretization::gather(std::span<const double> voxels) const {
  std::vector<double> out(size());
  for (std::size_t u = 0; u < size(); ++u) out[u] = voxels[map_->unknown_to_voxel[u]];
  return out;
}

PowerReport integrate_power(const Discretization& disc) {
  PowerReport report;
  detail::CompensatedSum total;
  const double volume = disc.voxel_volume();
  for (const auto& s : disc.sources()) {
    detail::CompensatedSum sum;
    for (std::size_t i = 0; i < s.unknowns.size(); ++i) sum.add(s.density * volume);
    report.per_source.emplace_back(s.name, sum.value());
    total.add(sum.value());
  }
  report.total = total.value();
  return report;
}

PowerReport integrate_power(const VoxelGrid& grid, const MaterialTable& materials,
                            const ScenarioSpec& scenario) {
  return integrate_power(Discretization(grid, materials, scenario));
}

}  // namespace mtcsim
