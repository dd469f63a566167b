#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mtcsim/discretization.hpp"

namespace mtcsim {

/// Compressed sparse row matrix with sorted column indices.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col;
  std::vector<double> val;

  std::size_t nonzeros() const { return val.size(); }
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// Entry (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;
  bool is_symmetric(double rel_tol = 0.0) const;
};

/// Assembled conduction system A·T = b over the unknowns of a discretization.
/// Fixed-temperature couplings are already moved into b; their conductance
/// stays on the diagonal and is also kept in `boundary_conductance`, so the
/// pre-elimination row sum of a source-free row is row_sum - boundary_conductance = 0.
struct LinearSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  std::vector<double> boundary_conductance;
  std::shared_ptr<const UnknownMap> map;
  /// Uniform temperature used to measure residuals relative to the deviation
  /// from ambient instead of absolute kelvin.
  double reference_temperature = 0.0;
  /// b - A·reference_temperature formed term by term (sources plus boundary
  /// and mass terms times their offset from the reference), so it scales
  /// exactly with the sources. Empty means the solver forms it from b.
  std::vector<double> deviation_rhs;
  /// Successor of each unknown along its through-plane column, -1 at the top.
  /// Used by the line preconditioner; empty selects point Jacobi.
  std::vector<std::int64_t> line_next;

  std::size_t size() const { return rhs.size(); }
};

}  // namespace mtcsim
