#include "mtcsim/assemble.hpp"

#include <array>
#include <cmath>
#include <string>

#include "mtcsim/error.hpp"

namespace mtcsim {

LinearSystem assemble_steady(const Discretization& disc, std::span<const double> linearization) {
  const std::size_t n = disc.size();
  if (linearization.size() != n) throw InputError("linearization field does not match the unknown count");

  // Per-unknown conductivity: in-plane (x, y) and through-plane (z).
  std::vector<double> k_in(n), k_th(n);
  for (std::size_t u = 0; u < n; ++u) {
    const double t = linearization[u];
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw SolverError("non-finite or non-positive linearization temperature at unknown " + std::to_string(u));
    }
    k_in[u] = disc.conductivity(u, 0, t);
    k_th[u] = disc.conductivity(u, 2, t);
    if (!std::isfinite(k_in[u]) || !std::isfinite(k_th[u]) || !(k_in[u] > 0.0) || !(k_th[u] > 0.0)) {
      throw SolverError("non-finite material evaluation at unknown " + std::to_string(u));
    }
  }
  const auto k_axis = [&](std::size_t u, int axis) { return axis == 2 ? k_th[u] : k_in[u]; };

  const auto& h = disc.spacing();
  const std::array<double, 3> area{h[1] * h[2], h[0] * h[2], h[0] * h[1]};

  LinearSystem sys;
  sys.map = disc.map();
  sys.reference_temperature = disc.ambient_temperature();
  sys.rhs.assign(disc.source_power().begin(), disc.source_power().end());
  sys.deviation_rhs = sys.rhs;
  sys.boundary_conductance.assign(n, 0.0);
  for (const auto& d : disc.dirichlet()) {
    const double g = k_axis(d.unknown, d.axis) * d.factor;
    sys.boundary_conductance[d.unknown] += g;
    sys.rhs[d.unknown] += g * d.temperature;
    sys.deviation_rhs[d.unknown] += g * (d.temperature - sys.reference_temperature);
  }

  auto& m = sys.matrix;
  m.rows = n;
  m.row_ptr.assign(1, 0);
  m.col.reserve(7 * n);
  m.val.reserve(7 * n);
  for (std::size_t u = 0; u < n; ++u) {
    double diag = sys.boundary_conductance[u];
    const auto couple = [&](int axis, int side) {
      const auto w = disc.neighbor(u, axis, side);
      if (w < 0) return;
      const auto wu = static_cast<std::size_t>(w);
      const double g = face_conductance(k_axis(u, axis), k_axis(wu, axis), area[axis], h[axis]);
      diag += g;
      m.col.push_back(wu);
      m.val.push_back(-g);
    };
    couple(2, -1);
    couple(1, -1);
    couple(0, -1);
    const std::size_t diag_pos = m.val.size();
    m.col.push_back(u);
    m.val.push_back(0.0);
    couple(0, 1);
    couple(1, 1);
    couple(2, 1);
    m.val[diag_pos] = diag;
    m.row_ptr.push_back(m.val.size());
  }
  sys.line_next.resize(n);
  for (std::size_t u = 0; u < n; ++u) sys.line_next[u] = disc.neighbor(u, 2, 1);
  return sys;
}

void add_backward_euler_mass(LinearSystem& system, const Discretization& disc, double dt,
                             std::span<const double> previous) {
  if (!(dt > 0.0)) throw InputError("time step must be positive");
  auto& m = system.matrix;
  for (std::size_t u = 0; u < system.size(); ++u) {
    const double c = disc.capacity(u) / dt;
    for (std::size_t p = m.row_ptr[u]; p < m.row_ptr[u + 1]; ++p) {
      if (m.col[p] == u) {
        m.val[p] += c;
        break;
      }
    }
    system.rhs[u] += c * previous[u];
    if (!system.deviation_rhs.empty()) system.deviation_rhs[u] += c * (previous[u] - system.reference_temperature);
  }
}

}  // namespace mtcsim
