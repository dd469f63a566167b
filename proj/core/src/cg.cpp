#include "mtcsim/cg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mtcsim/error.hpp"

namespace mtcsim {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void residual(const LinearSystem& sys, std::span<const double> x, std::span<double> r) {
  sys.matrix.multiply(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = sys.rhs[i] - r[i];
}

// Block Jacobi with one block per column; each block is tridiagonal and is
// factored once (Thomas algorithm). Without column data every block is a
// single unknown, which is plain Jacobi.
class ColumnPreconditioner {
 public:
  ColumnPreconditioner(const LinearSystem& sys, bool use_lines) {
    const std::size_t n = sys.size();
    const auto diag = sys.matrix.diagonal();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(diag[i] > 0.0)) throw SolverError("matrix has a non-positive diagonal entry; system is not SPD");
    }
    const bool lines = use_lines && sys.line_next.size() == n;
    std::vector<char> has_pred(n, 0);
    if (lines) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto nx = sys.line_next[i];
        if (nx >= 0) {
          if (static_cast<std::size_t>(nx) >= n || has_pred[static_cast<std::size_t>(nx)]) {
            throw InputError("column structure of the linear system is inconsistent");
          }
          has_pred[static_cast<std::size_t>(nx)] = 1;
        }
      }
    }
    // Symmetric tridiagonal LDL^T per column: pivot_i = d_i - e_{i-1}^2 / pivot_{i-1}.
    order_.reserve(n);
    start_.push_back(0);
    inv_pivot_.assign(n, 0.0);
    mult_.assign(n, 0.0);
    off_.assign(n, 0.0);
    for (std::size_t head = 0; head < n; ++head) {
      if (has_pred[head]) continue;
      std::size_t u = head;
      while (true) {
        const std::size_t pos = order_.size();
        order_.push_back(u);
        double pivot = diag[u];
        if (pos > start_.back()) {
          mult_[pos] = off_[pos - 1] * inv_pivot_[pos - 1];
          pivot -= mult_[pos] * off_[pos - 1];
        }
        if (!(pivot > 0.0)) throw SolverError("line preconditioner breakdown: matrix is not positive definite");
        inv_pivot_[pos] = 1.0 / pivot;
        const auto nx = lines ? sys.line_next[u] : -1;
        if (nx < 0) break;
        u = static_cast<std::size_t>(nx);
        off_[pos] = sys.matrix.at(order_[pos], u);
      }
      start_.push_back(order_.size());
    }
    if (order_.size() != n) throw InputError("column structure of the linear system contains a cycle");
    work_.resize(n);
  }

  void apply(std::span<const double> r, std::span<double> z) {
    for (std::size_t b = 0; b + 1 < start_.size(); ++b) {
      const std::size_t lo = start_[b], hi = start_[b + 1];
      work_[lo] = r[order_[lo]];
      for (std::size_t p = lo + 1; p < hi; ++p) work_[p] = r[order_[p]] - mult_[p] * work_[p - 1];
      double next = work_[hi - 1] * inv_pivot_[hi - 1];
      z[order_[hi - 1]] = next;
      for (std::size_t p = hi - 1; p-- > lo;) {
        next = (work_[p] - off_[p] * next) * inv_pivot_[p];
        z[order_[p]] = next;
      }
    }
  }

 private:
  std::vector<std::size_t> order_;
  std::vector<std::size_t> start_;
  std::vector<double> inv_pivot_;
  std::vector<double> mult_;
  std::vector<double> off_;
  std::vector<double> work_;
};

}  // namespace

Preconditioner parse_preconditioner(std::string_view name) {
  if (name == "jacobi") return Preconditioner::jacobi;
  if (name == "line") return Preconditioner::line;
  throw InputError("unknown preconditioner '" + std::string(name) + "' (expected jacobi or line)");
}

std::string_view preconditioner_name(Preconditioner p) {
  return p == Preconditioner::jacobi ? "jacobi" : "line";
}

CgResult solve_linear(const LinearSystem& sys, const CgOptions& options, std::span<const double> initial_guess) {
  const std::size_t n = sys.size();
  if (sys.matrix.rows != n) throw InputError("matrix and right-hand side sizes differ");
  if (!(options.tolerance > 0.0)) throw InputError("CG tolerance must be positive");
  if (!initial_guess.empty() && initial_guess.size() != n) throw InputError("initial guess has the wrong size");

  CgResult out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const std::size_t max_it = options.max_iterations ? options.max_iterations : 10 * n;

  ColumnPreconditioner precond(sys, options.preconditioner == Preconditioner::line);

  // Iterate on the deviation from the uniform reference temperature so the
  // large ambient offset does not set a roundoff floor on the residual.
  const double t_ref = sys.reference_temperature;
  std::vector<double> r(n), z(n), p(n), q(n);
  std::vector<double> shifted_rhs(n);
  bool zero_deviation = false;
  if (sys.deviation_rhs.size() == n) {
    shifted_rhs = sys.deviation_rhs;
    zero_deviation = dot(shifted_rhs, shifted_rhs) == 0.0;
  } else {
    std::vector<double> reference(n, t_ref);
    residual(sys, reference, shifted_rhs);
    // A deviation at roundoff level of the unshifted system means T = T_ref.
    zero_deviation = std::sqrt(dot(shifted_rhs, shifted_rhs)) <=
                     64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(dot(sys.rhs, sys.rhs));
  }
  const double scale = std::sqrt(dot(shifted_rhs, shifted_rhs));
  if (zero_deviation) {
    out.x.assign(n, t_ref);
    out.converged = true;
    return out;
  }
  const auto shifted_residual = [&](std::span<const double> y, std::span<double> res) {
    sys.matrix.multiply(y, res);
    for (std::size_t i = 0; i < n; ++i) res[i] = shifted_rhs[i] - res[i];
  };

  std::vector<double> x(n, 0.0);
  if (!initial_guess.empty()) {
    for (std::size_t i = 0; i < n; ++i) x[i] = initial_guess[i] - t_ref;
  }
  shifted_residual(x, r);
  const double target = options.tolerance * scale;

  double r_norm = std::sqrt(dot(r, r));
  std::size_t it = 0;
  while (it < max_it) {
    if (r_norm <= target) {
      // Guard against drift of the recursive residual.
      shifted_residual(x, r);
      r_norm = std::sqrt(dot(r, r));
      if (r_norm <= target) break;
    }
    precond.apply(r, z);
    p = z;
    double rz = dot(r, z);
    while (it < max_it && r_norm > target) {
      sys.matrix.multiply(p, q);
      const double pq = dot(p, q);
      if (!(pq > 0.0)) throw SolverError("conjugate gradient breakdown: matrix is not positive definite");
      const double alpha = rz / pq;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      ++it;
      r_norm = std::sqrt(dot(r, r));
      precond.apply(r, z);
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
  }
  shifted_residual(x, r);
  r_norm = std::sqrt(dot(r, r));
  for (auto& v : x) v += t_ref;
  out.x = std::move(x);
  out.iterations = it;
  out.relative_residual = r_norm / scale;
  out.converged = r_norm <= target;
  return out;
}

}  // namespace mtcsim
