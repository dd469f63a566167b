#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mtcsim/field.hpp"
#include "mtcsim/voxel_grid.hpp"

namespace mtcsim {

/// Legacy VTK (ASCII) STRUCTURED_POINTS file. Each voxel center is a point;
/// point data carries `temperature` (K; voxels without an unknown get
/// `void_temperature`) and `material` (voxel material id, -1 for void).
void write_vtk(std::ostream& out, const VoxelGrid& grid, const TemperatureField& field, double void_temperature,
               const std::string& title = "mtcsim temperature field");

/// Throws IoError when the file cannot be written.
void write_vtk_file(const std::filesystem::path& path, const VoxelGrid& grid, const TemperatureField& field,
                    double void_temperature, const std::string& title = "mtcsim temperature field");

}  // namespace mtcsim
