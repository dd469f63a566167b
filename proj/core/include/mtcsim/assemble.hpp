#pragma once

#include <span>

#include "mtcsim/discretization.hpp"
#include "mtcsim/linear_system.hpp"

namespace mtcsim {

/// Cell-centered finite-volume form of div(k grad T) + Q = 0 (7-point stencil).
///
/// Face conductance between neighbors is the harmonic mean of their
/// conductivities, evaluated at `linearization` (one value per unknown),
/// times face area over center distance. Fixed-temperature faces couple over
/// half a voxel; any other exterior face is adiabatic. Throws SolverError on
/// a non-finite conductivity.
LinearSystem assemble_steady(const Discretization& disc, std::span<const double> linearization);

/// Adds the backward-Euler mass term in place: A += C/dt, b += C/dt · previous.
void add_backward_euler_mass(LinearSystem& system, const Discretization& disc, double dt,
                             std::span<const double> previous);

/// Harmonic-mean conductance of two half-cells in series: 2·k1·k2/(k1+k2) · area/distance.
inline double face_conductance(double k1, double k2, double area, double distance) {
  return 2.0 * k1 * k2 / (k1 + k2) * area / distance;
}

}  // namespace mtcsim
