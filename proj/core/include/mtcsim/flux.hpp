#pragma once

#include "mtcsim/discretization.hpp"
#include "mtcsim/field.hpp"

namespace mtcsim {

/// Heat leaving through the fixed-temperature faces, W:
/// sum of k·A/(h/2)·(T_voxel - T_face), k evaluated at the voxel temperature.
double boundary_flux(const Discretization& disc, const TemperatureField& field);

struct EnergyBalance {
  double injected = 0.0;        // W
  double boundary_flux = 0.0;   // W
  double relative_error = 0.0;  // |flux - injected| / |injected|, or |flux| when nothing is injected
};

EnergyBalance energy_balance(const Discretization& disc, const TemperatureField& field);

}  // namespace mtcsim
