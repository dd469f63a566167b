#pragma once

#include <cstddef>

#include "mtcsim/geometry.hpp"
#include "mtcsim/material.hpp"
#include "mtcsim/voxel_grid.hpp"

namespace mtcsim {

struct GridLimits {
  std::size_t max_voxels = 20'000'000;
};

/// Voxelizes a hotplate description.
///
/// Spacings are the largest values not exceeding `resolution` for which every
/// feature boundary lands on a voxel face (coordinates are snapped on a 1 nm
/// lattice). Layer-stack films at least one target voxel thick get their own
/// voxel layers over the island; thinner films, and the heater and sensor
/// films, are folded into the voxel layer directly beneath them.
///
/// Named regions on the result: "all", "frame", "bridges", "island", "plate"
/// (island + bridges), "heater", "sensor", and "layer<i>:<material>" for each
/// resolved stack layer.
///
/// Throws GeometryError (feature name attached) when a feature is thinner than
/// the requested resolution or the parts are inconsistent.
VoxelGrid build_grid(const HotplateSpec& spec, const Resolution& resolution,
                     const MaterialTable& materials, const GridLimits& limits = {});

}  // namespace mtcsim
