#include "mtcsim/io/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mtcsim/error.hpp"
#include "mtcsim/units.hpp"

namespace mtcsim {
namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const json& member(const json& obj, const std::string& key, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(ctx + ": missing field '" + key + "'");
  return obj.at(key);
}

double quantity(const json& v, Dimension dim, const std::string& ctx) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_quantity(v.get<std::string>(), dim);
    } catch (const InputError& e) {
      throw InputError(ctx + ": " + e.what());
    }
  }
  throw InputError(ctx + ": expected a number or a quantity string");
}

double quantity(const json& obj, const std::string& key, Dimension dim, const std::string& ctx) {
  return quantity(member(obj, key, ctx), dim, ctx + "." + key);
}

std::string string_field(const json& obj, const std::string& key, const std::string& ctx) {
  const auto& v = member(obj, key, ctx);
  if (!v.is_string()) throw InputError(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::pair<double, double> range(const json& obj, const std::string& key, const std::string& ctx) {
  const auto& v = member(obj, key, ctx);
  if (!v.is_array() || v.size() != 2) throw InputError(ctx + "." + key + ": expected [lo, hi]");
  return {quantity(v[0], Dimension::length, ctx + "." + key), quantity(v[1], Dimension::length, ctx + "." + key)};
}

PatternedFilm patterned_film(const json& obj, const std::string& ctx) {
  PatternedFilm f;
  f.film.material = string_field(obj, "material", ctx);
  f.film.thickness = quantity(obj, "thickness", Dimension::length, ctx);
  std::tie(f.footprint.x_lo, f.footprint.x_hi) = range(obj, "x", ctx);
  std::tie(f.footprint.y_lo, f.footprint.y_hi) = range(obj, "y", ctx);
  return f;
}

Resolution resolution_from(const json& obj, const std::string& ctx) {
  Resolution r;
  if (obj.contains("d")) {
    r.dx = r.dy = r.dz = quantity(obj.at("d"), Dimension::length, ctx + ".d");
  }
  if (obj.contains("dx")) r.dx = quantity(obj.at("dx"), Dimension::length, ctx + ".dx");
  if (obj.contains("dy")) r.dy = quantity(obj.at("dy"), Dimension::length, ctx + ".dy");
  if (obj.contains("dz")) r.dz = quantity(obj.at("dz"), Dimension::length, ctx + ".dz");
  if (!(r.dx > 0.0) || !(r.dy > 0.0) || !(r.dz > 0.0)) {
    throw InputError(ctx + ": dx, dy, dz must all be given and positive");
  }
  return r;
}

RegionRef region_from(const json& v, const std::string& ctx) {
  RegionRef r;
  if (v.is_string()) {
    r.name = v.get<std::string>();
    return r;
  }
  if (v.is_object() && v.contains("box")) {
    const auto& b = v.at("box");
    const auto& lo = member(b, "lo", ctx + ".box");
    const auto& hi = member(b, "hi", ctx + ".box");
    if (!lo.is_array() || !hi.is_array() || lo.size() != 3 || hi.size() != 3) {
      throw InputError(ctx + ".box: lo and hi must be 3-element arrays");
    }
    Box box;
    for (std::size_t a = 0; a < 3; ++a) {
      box.lo[a] = quantity(lo[a], Dimension::length, ctx + ".box.lo");
      box.hi[a] = quantity(hi[a], Dimension::length, ctx + ".box.hi");
    }
    r.box = box;
    r.name = v.value("name", std::string("box"));
    return r;
  }
  throw InputError(ctx + ": region must be a region name or {\"box\": {...}}");
}

}  // namespace

DeviceFile parse_device(std::string_view text) {
  const json doc = parse_json(text, "device");
  try {
    DeviceFile out;
    auto& s = out.spec;
    s.name = doc.value("name", std::string("device"));
    const auto& island = member(doc, "island", "device");
    s.island_width = quantity(island, "width", Dimension::length, "device.island");
    s.island_length = island.contains("length") ? quantity(island, "length", Dimension::length, "device.island")
                                                : s.island_width;
    const auto& plate = member(doc, "plate", "device");
    s.plate_thickness = quantity(plate, "thickness", Dimension::length, "device.plate");
    s.plate_material = string_field(plate, "material", "device.plate");
    const auto& bridges = member(doc, "bridges", "device");
    s.bridge_count = bridges.value("count", 4);
    s.bridge_length = quantity(bridges, "length", Dimension::length, "device.bridges");
    s.bridge_width = quantity(bridges, "width", Dimension::length, "device.bridges");
    const auto& frame = member(doc, "frame", "device");
    s.frame_width = quantity(frame, "width", Dimension::length, "device.frame");
    s.frame_thickness = quantity(frame, "thickness", Dimension::length, "device.frame");
    s.frame_material = frame.contains("material") ? string_field(frame, "material", "device.frame") : s.plate_material;
    if (doc.contains("layers")) {
      std::size_t i = 0;
      for (const auto& l : doc.at("layers")) {
        const std::string ctx = "device.layers[" + std::to_string(i++) + "]";
        s.layers.push_back(Film{string_field(l, "material", ctx), quantity(l, "thickness", Dimension::length, ctx)});
      }
    }
    s.heater = patterned_film(member(doc, "heater", "device"), "device.heater");
    s.sensor = patterned_film(member(doc, "sensor", "device"), "device.sensor");
    if (doc.contains("resolution")) out.resolution = resolution_from(doc.at("resolution"), "device.resolution");
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("device: ") + e.what());
  }
}

MaterialTable parse_materials(std::string_view text) {
  const json doc = parse_json(text, "materials");
  try {
    MaterialTable table;
    const auto& list = member(doc, "materials", "materials");
    if (!list.is_array()) throw InputError("materials.materials: expected an array");
    std::size_t i = 0;
    for (const auto& m : list) {
      const std::string ctx = "materials[" + std::to_string(i++) + "]";
      Material mat;
      mat.name = string_field(m, "name", ctx);
      const std::string mctx = ctx + " (" + mat.name + ")";
      const auto& k = member(m, "conductivity", mctx);
      if (k.is_number()) {
        mat.conductivity = ConductivityModel::constant(k.get<double>());
      } else if (k.is_object() && k.contains("table")) {
        std::vector<ConductivityPoint> pts;
        for (const auto& row : k.at("table")) {
          if (!row.is_array() || row.size() != 2) throw InputError(mctx + ".conductivity.table: rows are [T_K, k]");
          pts.push_back({quantity(row[0], Dimension::temperature, mctx), row[1].get<double>()});
        }
        try {
          mat.conductivity = ConductivityModel::table(std::move(pts));
        } catch (const InputError& e) {
          throw InputError(mctx + ": " + e.what());
        }
      } else {
        throw InputError(mctx + ".conductivity: expected a number or {\"table\": [[T, k], ...]}");
      }
      if (m.contains("volumetric_heat_capacity")) {
        mat.volumetric_heat_capacity = m.at("volumetric_heat_capacity").get<double>();
      } else {
        mat.volumetric_heat_capacity = member(m, "density", mctx).get<double>() *
                                       member(m, "specific_heat", mctx).get<double>();
      }
      mat.note = m.value("source", std::string());
      try {
        table.add(std::move(mat));
      } catch (const InputError& e) {
        throw InputError(mctx + ": " + e.what());
      }
    }
    return table;
  } catch (const json::exception& e) {
    throw InputError(std::string("materials: ") + e.what());
  }
}

ScenarioSpec parse_scenario(std::string_view text) {
  const json doc = parse_json(text, "scenario");
  try {
    ScenarioSpec s;
    if (doc.contains("ambient_temperature")) {
      s.ambient_temperature = quantity(doc.at("ambient_temperature"), Dimension::temperature, "scenario.ambient_temperature");
    }
    const std::string mode = doc.value("ambient_mode", std::string("vacuum"));
    if (mode == "vacuum") {
      s.ambient_mode = AmbientMode::vacuum;
    } else if (mode == "still-air" || mode == "still_air" || mode == "air") {
      s.ambient_mode = AmbientMode::still_air;
    } else {
      throw InputError("scenario.ambient_mode: expected 'vacuum' or 'still-air', got '" + mode + "'");
    }
    s.ambient_material = doc.value("ambient_material", std::string("air"));
    if (doc.contains("boundary")) {
      s.boundary.clear();
      std::size_t i = 0;
      for (const auto& b : doc.at("boundary")) {
        const std::string ctx = "scenario.boundary[" + std::to_string(i++) + "]";
        FixedTemperatureFace f;
        const std::string face = b.is_string() ? b.get<std::string>() : string_field(b, "face", ctx);
        const auto parsed = parse_face(face);
        if (!parsed) throw InputError(ctx + ": unknown face '" + face + "' (use x-, x+, y-, y+, z-, z+)");
        f.face = *parsed;
        if (b.is_object() && b.contains("temperature")) {
          f.temperature = quantity(b.at("temperature"), Dimension::temperature, ctx + ".temperature");
        }
        if (b.is_object() && b.contains("materials")) f.materials = b.at("materials").get<std::vector<std::string>>();
        s.boundary.push_back(std::move(f));
      }
    }
    if (doc.contains("sources")) {
      std::size_t i = 0;
      for (const auto& src : doc.at("sources")) {
        const std::string ctx = "scenario.sources[" + std::to_string(i++) + "]";
        HeatSource h;
        h.region = region_from(member(src, "region", ctx), ctx + ".region");
        h.name = src.value("name", h.region.label());
        h.power = quantity(src, "power", Dimension::power, ctx);
        s.sources.push_back(std::move(h));
      }
    }
    if (doc.contains("probes")) {
      std::size_t i = 0;
      for (const auto& p : doc.at("probes")) {
        const std::string ctx = "scenario.probes[" + std::to_string(i++) + "]";
        ProbeSpec probe;
        probe.name = string_field(p, "name", ctx);
        probe.region = region_from(member(p, "region", ctx), ctx + ".region");
        const std::string stat = p.value("statistic", std::string("average"));
        const auto parsed = parse_statistic(stat);
        if (!parsed) throw InputError(ctx + ".statistic: expected 'max' or 'average'");
        probe.statistic = *parsed;
        for (const auto& existing : s.probes) {
          if (existing.name == probe.name) throw InputError(ctx + ": duplicate probe name '" + probe.name + "'");
        }
        s.probes.push_back(std::move(probe));
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
}

Resolution parse_resolution(std::string_view text) {
  const json doc = parse_json(text, "resolution");
  try {
    return resolution_from(doc, "resolution");
  } catch (const json::exception& e) {
    throw InputError(std::string("resolution: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DeviceFile load_device(const std::filesystem::path& path) {
  try {
    return parse_device(read_text_file(path));
  } catch (const InputError& e) {
    if (std::string_view(e.what()).find(path.string()) != std::string_view::npos) throw;
    throw InputError(path.string() + ": " + e.what());
  }
}

MaterialTable load_materials(const std::filesystem::path& path) {
  try {
    return parse_materials(read_text_file(path));
  } catch (const InputError& e) {
    if (std::string_view(e.what()).find(path.string()) != std::string_view::npos) throw;
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace mtcsim
