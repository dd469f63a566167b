#pragma once

#include <array>
#include <string>
#include <vector>

namespace mtcsim {

/// Axis-aligned box in device coordinates (meters). The origin sits at the
/// island center in x/y and at the bottom of the frame in z.
struct Box {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  bool contains(const std::array<double, 3>& p) const {
    for (int a = 0; a < 3; ++a) {
      if (p[a] < lo[a] || p[a] > hi[a]) return false;
    }
    return true;
  }
};

/// Rectangle on the plate surface, used for heater and sensor footprints.
struct Footprint {
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;
};

struct Film {
  std::string material;
  double thickness = 0.0;  // m
};

/// Patterned thin film on the plate (heater or temperature sensor).
struct PatternedFilm {
  Film film;
  Footprint footprint;
};

/// Parametric description of a suspended hotplate: a square-ish island held
/// by four bridges (one at the midpoint of each island edge) inside an
/// opening of a surrounding frame. All lengths in meters.
struct HotplateSpec {
  std::string name;

  double island_width = 0.0;   // x extent
  double island_length = 0.0;  // y extent
  double plate_thickness = 0.0;
  std::string plate_material;

  int bridge_count = 4;
  double bridge_length = 0.0;  // island edge to frame; 0 fuses the island to the frame
  double bridge_width = 0.0;

  double frame_width = 0.0;  // ring width around the opening
  double frame_thickness = 0.0;
  std::string frame_material;

  /// Films stacked on the island, bottom to top.
  std::vector<Film> layers;
  PatternedFilm heater;
  PatternedFilm sensor;
};

/// Target voxel edge lengths (m); realized spacings are at most these.
struct Resolution {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
};

}  // namespace mtcsim
