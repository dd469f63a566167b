#include "mtcsim/probe.hpp"

#include <algorithm>
#include <limits>

#include "mtcsim/error.hpp"
#include "summation.hpp"

namespace mtcsim {
namespace {

template <typename Values>
double reduce(const Values& values, Statistic statistic) {
  if (statistic == Statistic::max) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : values) m = std::max(m, v);
    return m;
  }
  // Uniform voxels: the volume weights cancel.
  detail::CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value() / static_cast<double>(values.size());
}

}  // namespace

double probe(const VoxelGrid& grid, const TemperatureField& field, const Region& region, Statistic statistic) {
  if (field.size() != grid.size()) throw InputError("field does not match the grid");
  std::vector<double> values;
  for (std::size_t v : region_voxels(grid, region)) {
    if (field.has(v)) values.push_back(field[v]);
  }
  if (values.empty()) throw InputError("probe region contains no voxels with a temperature");
  return reduce(values, statistic);
}

double probe(const VoxelGrid& grid, const TemperatureField& field, const RegionRef& region, Statistic statistic) {
  return probe(grid, field, resolve_region(grid, region), statistic);
}

ProbeSet::ProbeSet(const VoxelGrid& grid, const Discretization& disc, std::vector<ProbeSpec> probes)
    : specs_(std::move(probes)) {
  const auto& map = *disc.map();
  for (const auto& spec : specs_) {
    std::vector<std::size_t> members;
    for (std::size_t v : region_voxels(grid, resolve_region(grid, spec.region))) {
      if (map.voxel_to_unknown[v] >= 0) members.push_back(static_cast<std::size_t>(map.voxel_to_unknown[v]));
    }
    if (members.empty()) throw InputError("probe '" + spec.name + "': region contains no conducting voxels");
    members_.push_back(std::move(members));
  }
}

std::vector<double> ProbeSet::evaluate(std::span<const double> unknowns) const {
  std::vector<double> out;
  out.reserve(specs_.size());
  std::vector<double> buf;
  for (std::size_t p = 0; p < specs_.size(); ++p) {
    buf.clear();
    for (std::size_t u : members_[p]) buf.push_back(unknowns[u]);
    out.push_back(reduce(buf, specs_[p].statistic));
  }
  return out;
}

}  // namespace mtcsim
