#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mtcsim/linear_system.hpp"

namespace mtcsim {

enum class Preconditioner {
  jacobi,  // diagonal scaling
  line,    // exact tridiagonal solves along the system's z columns
};

struct CgOptions {
  double tolerance = 1e-10;        // relative residual
  std::size_t max_iterations = 0;  // 0 selects 10 × unknowns
  Preconditioner preconditioner = Preconditioner::line;
};

Preconditioner parse_preconditioner(std::string_view name);
std::string_view preconditioner_name(Preconditioner p);

struct CgResult {
  std::vector<double> x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Preconditioned conjugate gradient for the SPD conduction system.
///
/// The line preconditioner inverts the tridiagonal through-plane coupling of
/// each voxel column, which removes the stiffness of thin, flat voxels. It
/// falls back to Jacobi when the system carries no column structure.
///
/// Convergence is declared when ||b - A x|| <= tolerance · ||b - A x_ref||,
/// x_ref being the uniform reference temperature of the system, so the
/// criterion scales with the temperature rise rather than the absolute
/// temperature. The final residual is recomputed explicitly before
/// convergence is accepted. Non-convergence is reported, not thrown.
CgResult solve_linear(const LinearSystem& system, const CgOptions& options = {},
                      std::span<const double> initial_guess = {});

}  // namespace mtcsim
