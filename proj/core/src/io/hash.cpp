#include "mtcsim/io/hash.hpp"

#include <bit>
#include <cstdio>

namespace mtcsim {

void Fnv1a::update(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    state_ ^= p[i];
    state_ *= 0x100000001b3ULL;
  }
}

void Fnv1a::update(std::string_view s) {
  update(static_cast<std::int64_t>(s.size()));
  update(s.data(), s.size());
}

void Fnv1a::update(double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v);
  update(&bits, sizeof bits);
}

void Fnv1a::update(std::int64_t v) { update(&v, sizeof v); }

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

namespace {

void hash_region(Fnv1a& h, const RegionRef& r) {
  h.update(r.name);
  h.update(static_cast<std::int64_t>(r.box.has_value()));
  if (r.box) {
    for (int a = 0; a < 3; ++a) {
      h.update(r.box->lo[a]);
      h.update(r.box->hi[a]);
    }
  }
}

Fnv1a hash_model(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& s) {
  Fnv1a h;
  h.update(std::string_view("mtcsim-model-v1"));
  for (int n : grid.dims()) h.update(static_cast<std::int64_t>(n));
  for (double d : grid.spacing()) h.update(d);
  for (double o : grid.origin) h.update(o);
  h.update(grid.material_id.data(), grid.material_id.size() * sizeof(grid.material_id[0]));
  h.update(grid.void_mask.data(), grid.void_mask.size());
  for (const auto& vm : grid.voxel_materials) {
    h.update(vm.label);
    for (const auto& p : vm.parts) {
      h.update(static_cast<std::int64_t>(p.material));
      h.update(p.weight);
    }
  }
  for (const auto& [name, region] : grid.regions) {
    h.update(name);
    for (const auto& b : region) {
      for (int a = 0; a < 3; ++a) {
        h.update(static_cast<std::int64_t>(b.lo[a]));
        h.update(static_cast<std::int64_t>(b.hi[a]));
      }
    }
  }
  for (const auto& m : materials) {
    h.update(m.name);
    h.update(m.volumetric_heat_capacity);
    if (m.conductivity.is_constant()) {
      h.update(m.conductivity.constant_value());
    } else {
      for (const auto& p : m.conductivity.points()) {
        h.update(p.temperature);
        h.update(p.conductivity);
      }
    }
  }
  h.update(s.ambient_temperature);
  h.update(static_cast<std::int64_t>(s.ambient_mode));
  h.update(s.ambient_material);
  for (const auto& b : s.boundary) {
    h.update(static_cast<std::int64_t>(b.face));
    h.update(b.temperature.value_or(-1.0));
    for (const auto& m : b.materials) h.update(m);
  }
  for (const auto& src : s.sources) {
    h.update(src.name);
    hash_region(h, src.region);
  }
  for (const auto& p : s.probes) {
    h.update(p.name);
    hash_region(h, p.region);
    h.update(static_cast<std::int64_t>(p.statistic));
  }
  return h;
}

}  // namespace

std::string model_hash(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario) {
  return hash_model(grid, materials, scenario).hex();
}

std::string scenario_hash(const VoxelGrid& grid, const MaterialTable& materials, const ScenarioSpec& scenario) {
  Fnv1a h = hash_model(grid, materials, scenario);
  h.update(std::string_view("sources"));
  for (const auto& src : scenario.sources) h.update(src.power);
  return h.hex();
}

}  // namespace mtcsim
