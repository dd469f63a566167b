#include "mtcsim/grid_builder.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mtcsim/error.hpp"

namespace mtcsim {
namespace {

constexpr double kNmPerMeter = 1e9;
constexpr double kRelTol = 1e-9;

[[noreturn]] void fail(const std::string& feature, const std::string& why) {
  throw GeometryError(feature, feature + ": " + why);
}

void require_positive(const std::string& feature, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) fail(feature, "must be positive");
}

void require_resolved(const std::string& feature, double extent, double target) {
  if (extent < target * (1.0 - kRelTol)) {
    fail(feature, "feature-thinner-than-resolution (" + std::to_string(extent * 1e6) +
                      " um < " + std::to_string(target * 1e6) + " um)");
  }
}

/// One grid axis: breakpoints on an integer nanometer lattice measured from
/// the axis minimum, snapped to a common spacing.
class Axis {
 public:
  Axis(std::string name, double min, double max) : name_(std::move(name)), min_(min) {
    add(min);
    add(max);
  }

  void add(double coord) {
    const double nm = (coord - min_) * kNmPerMeter;
    const long long r = std::llround(nm);
    if (std::abs(nm - static_cast<double>(r)) > 1e-3) {
      fail(name_ + " coordinate", "feature boundaries must lie on a 1 nm lattice");
    }
    if (r < 0) fail(name_ + " coordinate", "lies outside the domain");
    points_.push_back(r);
  }

  /// Picks the spacing and returns the number of cells.
  int snap(double target, std::size_t max_cells) {
    long long g = 0;
    long long total = 0;
    for (long long p : points_) {
      g = std::gcd(g, p);
      total = std::max(total, p);
    }
    const double target_nm = target * kNmPerMeter;
    per_g_ = static_cast<long long>(std::ceil(static_cast<double>(g) / target_nm - kRelTol));
    per_g_ = std::max<long long>(per_g_, 1);
    g_ = g;
    const long long cells = total / g * per_g_;
    if (cells > static_cast<long long>(max_cells)) {
      fail(name_ + " axis", "snapping feature boundaries needs " + std::to_string(cells) +
                                " cells; feature coordinates are not commensurate with the resolution");
    }
    return static_cast<int>(cells);
  }

  double spacing() const { return static_cast<double>(g_) / static_cast<double>(per_g_) / kNmPerMeter; }

  int cell(double coord) const {
    const long long nm = std::llround((coord - min_) * kNmPerMeter);
    return static_cast<int>(nm / g_ * per_g_);
  }

 private:
  std::string name_;
  double min_;
  std::vector<long long> points_;
  long long g_ = 1;
  long long per_g_ = 1;
};

using Signature = std::vector<std::pair<std::size_t, double>>;

class MaterialRegistry {
 public:
  explicit MaterialRegistry(VoxelGrid& grid) : grid_(grid) {}

  std::uint16_t id(const std::string& label, const Signature& sig) {
    if (auto it = ids_.find(sig); it != ids_.end()) return it->second;
    VoxelMaterial vm;
    vm.label = label;
    for (const auto& [m, w] : sig) vm.parts.push_back(MaterialPart{m, w});
    grid_.voxel_materials.push_back(std::move(vm));
    const auto id = static_cast<std::uint16_t>(grid_.voxel_materials.size() - 1);
    ids_.emplace(sig, id);
    return id;
  }

 private:
  VoxelGrid& grid_;
  std::map<Signature, std::uint16_t> ids_;
};

void validate_spec(const HotplateSpec& s, const MaterialTable& materials) {
  require_positive("island width", s.island_width);
  require_positive("island length", s.island_length);
  require_positive("plate thickness", s.plate_thickness);
  require_positive("bridge width", s.bridge_width);
  require_positive("frame width", s.frame_width);
  require_positive("frame thickness", s.frame_thickness);
  if (s.bridge_count != 4) fail("bridges", "exactly four bridges are supported");
  if (s.bridge_length < 0.0 || !std::isfinite(s.bridge_length)) fail("bridge length", "must be >= 0");
  if (s.bridge_width > s.island_width * (1 + kRelTol) || s.bridge_width > s.island_length * (1 + kRelTol)) {
    fail("bridges", "island/bridge overlap inconsistency: bridge wider than the island edge it attaches to");
  }
  if (s.plate_thickness > s.frame_thickness * (1 + kRelTol)) {
    fail("plate", "plate thicker than the frame it is cut from");
  }
  for (std::size_t i = 0; i < s.layers.size(); ++i) {
    require_positive("layer " + std::to_string(i) + " (" + s.layers[i].material + ") thickness",
                     s.layers[i].thickness);
  }
  const auto check_film = [&](const std::string& name, const PatternedFilm& f) {
    require_positive(name + " film thickness", f.film.thickness);
    const auto& fp = f.footprint;
    if (!(fp.x_hi > fp.x_lo) || !(fp.y_hi > fp.y_lo)) fail(name, "footprint is empty");
    const double hx = 0.5 * s.island_width * (1 + kRelTol);
    const double hy = 0.5 * s.island_length * (1 + kRelTol);
    if (fp.x_lo < -hx || fp.x_hi > hx || fp.y_lo < -hy || fp.y_hi > hy) {
      fail(name, "footprint must lie within the island");
    }
  };
  check_film("heater", s.heater);
  check_film("sensor", s.sensor);

  const auto check_material = [&](const std::string& feature, const std::string& name) {
    if (!materials.find(name)) fail(feature, "unknown material '" + name + "'");
  };
  check_material("plate", s.plate_material);
  check_material("frame", s.frame_material);
  check_material("heater", s.heater.film.material);
  check_material("sensor", s.sensor.film.material);
  for (const auto& l : s.layers) check_material("layer", l.material);
}

}  // namespace

VoxelGrid build_grid(const HotplateSpec& spec, const Resolution& res, const MaterialTable& materials,
                     const GridLimits& limits) {
  if (!(res.dx > 0.0) || !(res.dy > 0.0) || !(res.dz > 0.0)) {
    throw InputError("resolution must be positive on every axis");
  }
  validate_spec(spec, materials);

  const double half_w = 0.5 * spec.island_width;
  const double half_l = 0.5 * spec.island_length;
  const double open_x = half_w + spec.bridge_length;
  const double open_y = half_l + spec.bridge_length;
  const double ext_x = open_x + spec.frame_width;
  const double ext_y = open_y + spec.frame_width;
  const double half_b = 0.5 * spec.bridge_width;

  require_resolved("island width", spec.island_width, res.dx);
  require_resolved("island length", spec.island_length, res.dy);
  require_resolved("bridge width", spec.bridge_width, std::min(res.dx, res.dy));
  if (spec.bridge_length > 0.0) require_resolved("bridge length", spec.bridge_length, std::max(res.dx, res.dy));
  require_resolved("frame width", spec.frame_width, std::max(res.dx, res.dy));
  require_resolved("plate thickness", spec.plate_thickness, res.dz);
  require_resolved("frame thickness", spec.frame_thickness, res.dz);
  const double frame_below = spec.frame_thickness - spec.plate_thickness;
  if (frame_below > spec.frame_thickness * kRelTol) {
    require_resolved("frame below plate", frame_below, res.dz);
  }
  for (const auto* f : {&spec.heater, &spec.sensor}) {
    const std::string name = f == &spec.heater ? "heater" : "sensor";
    require_resolved(name + " footprint x", f->footprint.x_hi - f->footprint.x_lo, res.dx);
    require_resolved(name + " footprint y", f->footprint.y_hi - f->footprint.y_lo, res.dy);
  }

  Axis ax("x", -ext_x, ext_x);
  Axis ay("y", -ext_y, ext_y);
  for (double s : {-1.0, 1.0}) {
    ax.add(s * open_x);
    ax.add(s * half_w);
    ax.add(s * half_b);
    ay.add(s * open_y);
    ay.add(s * half_l);
    ay.add(s * half_b);
  }
  for (const auto* f : {&spec.heater, &spec.sensor}) {
    ax.add(f->footprint.x_lo);
    ax.add(f->footprint.x_hi);
    ay.add(f->footprint.y_lo);
    ay.add(f->footprint.y_hi);
  }

  // z: frame bottom at 0, plate on top of the frame, resolved layers above.
  std::vector<bool> resolved(spec.layers.size(), false);
  double stack_top = spec.frame_thickness;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    if (spec.layers[i].thickness >= res.dz * (1.0 - kRelTol)) {
      resolved[i] = true;
      stack_top += spec.layers[i].thickness;
    }
  }
  Axis az("z", 0.0, stack_top);
  az.add(frame_below > spec.frame_thickness * kRelTol ? frame_below : 0.0);
  az.add(spec.frame_thickness);
  {
    double z = spec.frame_thickness;
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
      if (!resolved[i]) continue;
      z += spec.layers[i].thickness;
      az.add(z);
    }
  }

  VoxelGrid grid;
  grid.nx = ax.snap(res.dx, limits.max_voxels);
  grid.ny = ay.snap(res.dy, limits.max_voxels);
  grid.nz = az.snap(res.dz, limits.max_voxels);
  if (grid.size() > limits.max_voxels) {
    fail("grid", "needs " + std::to_string(grid.size()) + " voxels, above the limit of " +
                     std::to_string(limits.max_voxels));
  }
  grid.dx = ax.spacing();
  grid.dy = ay.spacing();
  grid.dz = az.spacing();
  grid.origin = {-ext_x, -ext_y, 0.0};
  grid.material_id.assign(grid.size(), kVoidMaterial);
  grid.void_mask.assign(grid.size(), 1);

  MaterialRegistry registry(grid);
  const std::size_t plate_m = materials.index_of(spec.plate_material);
  const std::size_t frame_m = materials.index_of(spec.frame_material);
  const std::uint16_t plate_id = registry.id(spec.plate_material, {{plate_m, 1.0}});
  const std::uint16_t frame_id = registry.id(spec.frame_material, {{frame_m, 1.0}});

  const int k_plate = az.cell(spec.frame_thickness - spec.plate_thickness);
  const int k_top = az.cell(spec.frame_thickness);

  const auto fill = [&](const IndexBox& b, std::uint16_t id) {
    for (int k = b.lo[2]; k < b.hi[2]; ++k)
      for (int j = b.lo[1]; j < b.hi[1]; ++j)
        for (int i = b.lo[0]; i < b.hi[0]; ++i) {
          const auto v = grid.index(i, j, k);
          grid.material_id[v] = id;
          grid.void_mask[v] = 0;
        }
  };
  const auto box = [&](double x0, double x1, double y0, double y1, int k0, int k1) {
    return IndexBox{{ax.cell(x0), ay.cell(y0), k0}, {ax.cell(x1), ay.cell(y1), k1}};
  };

  Region frame{box(-ext_x, ext_x, -ext_y, -open_y, 0, k_top), box(-ext_x, ext_x, open_y, ext_y, 0, k_top),
               box(-ext_x, -open_x, -open_y, open_y, 0, k_top), box(open_x, ext_x, -open_y, open_y, 0, k_top)};
  Region bridges;
  if (spec.bridge_length > 0.0) {
    bridges = {box(-open_x, -half_w, -half_b, half_b, k_plate, k_top),
               box(half_w, open_x, -half_b, half_b, k_plate, k_top),
               box(-half_b, half_b, -open_y, -half_l, k_plate, k_top),
               box(-half_b, half_b, half_l, open_y, k_plate, k_top)};
  }
  const IndexBox island = box(-half_w, half_w, -half_l, half_l, k_plate, k_top);

  for (const auto& b : frame) fill(b, frame_id);
  for (const auto& b : bridges) fill(b, plate_id);
  fill(island, plate_id);

  // Thin films folded into the voxel layer below them, keyed by voxel.
  std::map<std::size_t, Signature> extras;
  const auto collapse = [&](const IndexBox& b, std::size_t material, double thickness) {
    for (int k = b.lo[2]; k < b.hi[2]; ++k)
      for (int j = b.lo[1]; j < b.hi[1]; ++j)
        for (int i = b.lo[0]; i < b.hi[0]; ++i) {
          extras[grid.index(i, j, k)].emplace_back(material, thickness / grid.dz);
        }
  };

  const auto film_box = [&](const Footprint& fp) {
    return box(fp.x_lo, fp.x_hi, fp.y_lo, fp.y_hi, k_top - 1, k_top);
  };
  const IndexBox heater = film_box(spec.heater.footprint);
  const IndexBox sensor = film_box(spec.sensor.footprint);
  collapse(heater, materials.index_of(spec.heater.film.material), spec.heater.film.thickness);
  collapse(sensor, materials.index_of(spec.sensor.film.material), spec.sensor.film.thickness);

  std::map<std::string, Region> layer_regions;
  int k_cursor = k_top;
  double z_cursor = spec.frame_thickness;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& layer = spec.layers[i];
    const std::size_t m = materials.index_of(layer.material);
    if (resolved[i]) {
      z_cursor += layer.thickness;
      const int k_next = az.cell(z_cursor);
      const IndexBox b = box(-half_w, half_w, -half_l, half_l, k_cursor, k_next);
      fill(b, registry.id(layer.material, {{m, 1.0}}));
      layer_regions["layer" + std::to_string(i) + ":" + layer.material] = Region{b};
      k_cursor = k_next;
    } else {
      collapse(box(-half_w, half_w, -half_l, half_l, k_cursor - 1, k_cursor), m, layer.thickness);
    }
  }

  for (auto& [v, sig] : extras) {
    const auto& base = grid.voxel_materials[grid.material_id[v]];
    Signature full;
    for (const auto& p : base.parts) full.emplace_back(p.material, p.weight);
    std::string label = base.label;
    for (const auto& [m, w] : sig) {
      full.emplace_back(m, w);
      label += "+" + materials[m].name;
    }
    grid.material_id[v] = registry.id(label, full);
  }

  grid.regions["all"] = Region{IndexBox{{0, 0, 0}, {grid.nx, grid.ny, grid.nz}}};
  grid.regions["frame"] = frame;
  grid.regions["bridges"] = bridges;
  grid.regions["island"] = Region{island};
  Region plate = bridges;
  plate.push_back(island);
  grid.regions["plate"] = plate;
  grid.regions["heater"] = Region{heater};
  grid.regions["sensor"] = Region{sensor};
  for (auto& [name, r] : layer_regions) grid.regions[name] = r;

  validate_grid(grid, materials);
  return grid;
}

}  // namespace mtcsim
