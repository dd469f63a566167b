#include "mtcsim/flux.hpp"

#include <cmath>

#include "mtcsim/error.hpp"
#include "summation.hpp"

namespace mtcsim {

double boundary_flux(const Discretization& disc, const TemperatureField& field) {
  const auto& map = *disc.map();
  if (field.size() != map.voxel_to_unknown.size()) throw InputError("field does not match the discretization");
  detail::CompensatedSum sum;
  for (const auto& d : disc.dirichlet()) {
    const double t = field[map.unknown_to_voxel[d.unknown]];
    sum.add(disc.conductivity(d.unknown, d.axis, t) * d.factor * (t - d.temperature));
  }
  return sum.value();
}

EnergyBalance energy_balance(const Discretization& disc, const TemperatureField& field) {
  EnergyBalance e;
  e.injected = integrate_power(disc).total;
  e.boundary_flux = boundary_flux(disc, field);
  const double diff = std::abs(e.boundary_flux - e.injected);
  e.relative_error = e.injected != 0.0 ? diff / std::abs(e.injected) : diff;
  return e;
}

}  // namespace mtcsim
