#include "mtcsim/material.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "mtcsim/error.hpp"

namespace mtcsim {
namespace {
std::atomic<std::uint64_t> g_clamp_warnings{0};
}

ConductivityModel ConductivityModel::constant(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InputError("thermal conductivity must be positive and finite");
  }
  return ConductivityModel(k);
}

ConductivityModel ConductivityModel::table(std::vector<ConductivityPoint> points) {
  if (points.empty()) throw InputError("conductivity table is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!(p.conductivity > 0.0) || !std::isfinite(p.conductivity)) {
      throw InputError("conductivity table values must be positive and finite");
    }
    if (!(p.temperature > 0.0)) throw InputError("conductivity table temperatures must be > 0 K");
    if (i > 0 && !(p.temperature > points[i - 1].temperature)) {
      throw InputError("conductivity table temperatures must be strictly increasing");
    }
  }
  if (points.size() == 1) return ConductivityModel(points.front().conductivity);
  return ConductivityModel(std::move(points));
}

std::vector<ConductivityPoint> ConductivityModel::points() const {
  if (const auto* t = std::get_if<std::vector<ConductivityPoint>>(&model_)) return *t;
  return {};
}

double ConductivityModel::constant_value() const {
  if (const auto* k = std::get_if<double>(&model_)) return *k;
  throw InputError("conductivity model is not constant");
}

double conductivity_at(const ConductivityModel& model, double temperature) {
  if (const auto* k = std::get_if<double>(&model.model_)) return *k;
  const auto& t = std::get<std::vector<ConductivityPoint>>(model.model_);
  if (temperature <= t.front().temperature) {
    if (temperature < t.front().temperature) g_clamp_warnings.fetch_add(1, std::memory_order_relaxed);
    return t.front().conductivity;
  }
  if (temperature >= t.back().temperature) {
    if (temperature > t.back().temperature) g_clamp_warnings.fetch_add(1, std::memory_order_relaxed);
    return t.back().conductivity;
  }
  const auto hi = std::upper_bound(t.begin(), t.end(), temperature,
                                   [](double v, const ConductivityPoint& p) { return v < p.temperature; });
  const auto lo = hi - 1;
  const double f = (temperature - lo->temperature) / (hi->temperature - lo->temperature);
  return lo->conductivity + f * (hi->conductivity - lo->conductivity);
}

std::uint64_t clamp_warning_count() noexcept { return g_clamp_warnings.load(std::memory_order_relaxed); }
void reset_clamp_warning_count() noexcept { g_clamp_warnings.store(0, std::memory_order_relaxed); }

MaterialTable::MaterialTable(std::vector<Material> materials) {
  for (auto& m : materials) add(std::move(m));
}

std::size_t MaterialTable::add(Material m) {
  if (m.name.empty()) throw InputError("material name is empty");
  if (find(m.name)) throw InputError("duplicate material '" + m.name + "'");
  if (!(m.volumetric_heat_capacity > 0.0) || !std::isfinite(m.volumetric_heat_capacity)) {
    throw InputError("material '" + m.name + "': volumetric heat capacity must be positive");
  }
  materials_.push_back(std::move(m));
  return materials_.size() - 1;
}

std::optional<std::size_t> MaterialTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < materials_.size(); ++i) {
    if (materials_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t MaterialTable::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown material '" + std::string(name) + "'");
}

}  // namespace mtcsim
