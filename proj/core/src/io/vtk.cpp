#include "mtcsim/io/vtk.hpp"

#include <fstream>
#include <ostream>

#include "mtcsim/error.hpp"
#include "mtcsim/io/csv.hpp"

namespace mtcsim {

void write_vtk(std::ostream& out, const VoxelGrid& grid, const TemperatureField& field, double void_temperature,
               const std::string& title) {
  if (field.size() != grid.size()) throw InputError("field does not match the grid");
  out << "# vtk DataFile Version 3.0\n";
  // The title line is limited to 256 characters and must not contain newlines.
  std::string t = title.substr(0, 255);
  for (auto& c : t) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  out << t << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << grid.nx << ' ' << grid.ny << ' ' << grid.nz << '\n';
  const auto c0 = grid.center(0, 0, 0);
  out << "ORIGIN " << format_number(c0[0]) << ' ' << format_number(c0[1]) << ' ' << format_number(c0[2]) << '\n';
  out << "SPACING " << format_number(grid.dx) << ' ' << format_number(grid.dy) << ' ' << format_number(grid.dz)
      << '\n';
  out << "POINT_DATA " << grid.size() << '\n';
  out << "SCALARS temperature double 1\nLOOKUP_TABLE default\n";
  for (std::size_t v = 0; v < grid.size(); ++v) {
    out << format_number(field.has(v) ? field[v] : void_temperature) << '\n';
  }
  out << "SCALARS material int 1\nLOOKUP_TABLE default\n";
  for (std::size_t v = 0; v < grid.size(); ++v) {
    out << (grid.is_void(v) ? -1 : static_cast<int>(grid.material_id[v])) << '\n';
  }
}

void write_vtk_file(const std::filesystem::path& path, const VoxelGrid& grid, const TemperatureField& field,
                    double void_temperature, const std::string& title) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_vtk(out, grid, field, void_temperature, title);
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace mtcsim
