#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtcsim/geometry.hpp"
#include "mtcsim/voxel_grid.hpp"

namespace mtcsim {

enum class AmbientMode {
  vacuum,     // void voxels carry no unknowns
  still_air,  // void voxels conduct as the ambient material, no convection
};

enum class Face { x_minus, x_plus, y_minus, y_plus, z_minus, z_plus };

std::string_view face_name(Face f);
/// Accepts "x-", "x+", "y-", "y+", "z-", "z+".
std::optional<Face> parse_face(std::string_view s);

/// A named grid region, or an explicit box in device coordinates.
struct RegionRef {
  std::string name;
  std::optional<Box> box;

  std::string label() const { return box ? "box" : name; }
};

struct HeatSource {
  std::string name;
  RegionRef region;
  double power = 0.0;  // W, spread uniformly over the region's conducting voxels
};

/// Exterior grid face held at a fixed temperature (the ambient unless given).
/// A non-empty `materials` list restricts it to voxels whose base material is listed.
struct FixedTemperatureFace {
  Face face = Face::x_minus;
  std::optional<double> temperature;
  std::vector<std::string> materials;
};

enum class Statistic { max, average };

std::string_view statistic_name(Statistic s);
std::optional<Statistic> parse_statistic(std::string_view s);

struct ProbeSpec {
  std::string name;
  RegionRef region;
  Statistic statistic = Statistic::average;
};

struct ScenarioSpec {
  double ambient_temperature = 300.0;  // K
  AmbientMode ambient_mode = AmbientMode::vacuum;
  std::string ambient_material = "air";
  std::vector<FixedTemperatureFace> boundary = lateral_walls();
  std::vector<HeatSource> sources;
  std::vector<ProbeSpec> probes;

  /// The four side walls (x-, x+, y-, y+) at ambient temperature.
  static std::vector<FixedTemperatureFace> lateral_walls();

  double total_power() const;
  const ProbeSpec& probe(std::string_view name) const;
};

/// Resolves a region reference against the grid; throws InputError for an
/// unknown name.
Region resolve_region(const VoxelGrid& grid, const RegionRef& ref);

}  // namespace mtcsim
