#include "mtcsim/scenario.hpp"

#include <array>

#include "mtcsim/error.hpp"

namespace mtcsim {
namespace {
constexpr std::array<std::string_view, 6> kFaceNames{"x-", "x+", "y-", "y+", "z-", "z+"};
}

std::string_view face_name(Face f) { return kFaceNames[static_cast<std::size_t>(f)]; }

std::optional<Face> parse_face(std::string_view s) {
  for (std::size_t i = 0; i < kFaceNames.size(); ++i) {
    if (kFaceNames[i] == s) return static_cast<Face>(i);
  }
  return std::nullopt;
}

std::string_view statistic_name(Statistic s) { return s == Statistic::max ? "max" : "average"; }

std::optional<Statistic> parse_statistic(std::string_view s) {
  if (s == "max") return Statistic::max;
  if (s == "average" || s == "avg" || s == "volume-average") return Statistic::average;
  return std::nullopt;
}

std::vector<FixedTemperatureFace> ScenarioSpec::lateral_walls() {
  return {FixedTemperatureFace{Face::x_minus, std::nullopt, {}},
          FixedTemperatureFace{Face::x_plus, std::nullopt, {}},
          FixedTemperatureFace{Face::y_minus, std::nullopt, {}},
          FixedTemperatureFace{Face::y_plus, std::nullopt, {}}};
}

double ScenarioSpec::total_power() const {
  double p = 0.0;
  for (const auto& s : sources) p += s.power;
  return p;
}

const ProbeSpec& ScenarioSpec::probe(std::string_view name) const {
  for (const auto& p : probes) {
    if (p.name == name) return p;
  }
  throw InputError("unknown probe '" + std::string(name) + "'");
}

Region resolve_region(const VoxelGrid& grid, const RegionRef& ref) {
  if (ref.box) return Region{index_box(grid, *ref.box)};
  const auto it = grid.regions.find(ref.name);
  if (it == grid.regions.end()) throw InputError("unknown region '" + ref.name + "'");
  return it->second;
}

}  // namespace mtcsim
