#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mtcsim/geometry.hpp"
#include "mtcsim/material.hpp"
#include "mtcsim/scenario.hpp"

namespace mtcsim {

struct DeviceFile {
  HotplateSpec spec;
  std::optional<Resolution> resolution;  // optional default resolution
};

/// Device, material, and scenario documents (JSON). Lengths, powers, and
/// temperatures accept unit suffixes ("150um", "1mW", "300K"); bare numbers
/// are SI. Malformed documents raise InputError naming the offending field.
DeviceFile parse_device(std::string_view json_text);
MaterialTable parse_materials(std::string_view json_text);
ScenarioSpec parse_scenario(std::string_view json_text);
Resolution parse_resolution(std::string_view json_text);

/// Reads a whole text file; a missing or unreadable file is an InputError
/// carrying the path.
std::string read_text_file(const std::filesystem::path& path);

DeviceFile load_device(const std::filesystem::path& path);
MaterialTable load_materials(const std::filesystem::path& path);

}  // namespace mtcsim
