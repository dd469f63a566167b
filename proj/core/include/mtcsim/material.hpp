#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mtcsim {

/// One (temperature, conductivity) breakpoint of a piecewise-linear k(T) table.
struct ConductivityPoint {
  double temperature;   // K
  double conductivity;  // W/(m·K)
};

/// Thermal conductivity model: a constant, or a piecewise-linear table in T
/// that clamps to the nearest endpoint outside its range.
class ConductivityModel {
 public:
  static ConductivityModel constant(double k);
  /// Throws InputError unless temperatures strictly increase and every k > 0.
  static ConductivityModel table(std::vector<ConductivityPoint> points);

  bool is_constant() const noexcept { return std::holds_alternative<double>(model_); }
  /// Breakpoints of a table model; empty for the constant model.
  std::vector<ConductivityPoint> points() const;
  double constant_value() const;

  friend double conductivity_at(const ConductivityModel& model, double temperature);

 private:
  explicit ConductivityModel(std::variant<double, std::vector<ConductivityPoint>> m)
      : model_(std::move(m)) {}

  std::variant<double, std::vector<ConductivityPoint>> model_;
};

struct Material {
  std::string name;
  ConductivityModel conductivity = ConductivityModel::constant(1.0);
  double volumetric_heat_capacity = 1.0;  // rho*c_p, J/(m^3·K)
  std::string note;                       // provenance of the values
};

/// Evaluates k(T). Out-of-table queries clamp and bump clamp_warning_count().
double conductivity_at(const ConductivityModel& model, double temperature);
inline double conductivity_at(const Material& m, double temperature) {
  return conductivity_at(m.conductivity, temperature);
}

/// Process-wide count of clamped k(T) evaluations.
std::uint64_t clamp_warning_count() noexcept;
void reset_clamp_warning_count() noexcept;

class MaterialTable {
 public:
  MaterialTable() = default;
  explicit MaterialTable(std::vector<Material> materials);

  /// Throws InputError on a duplicate name or invalid heat capacity.
  std::size_t add(Material m);
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws InputError naming the missing material.
  std::size_t index_of(std::string_view name) const;

  const Material& operator[](std::size_t i) const { return materials_[i]; }
  std::size_t size() const noexcept { return materials_.size(); }
  auto begin() const { return materials_.begin(); }
  auto end() const { return materials_.end(); }

 private:
  std::vector<Material> materials_;
};

}  // namespace mtcsim
