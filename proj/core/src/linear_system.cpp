#include "mtcsim/linear_system.hpp"

#include <algorithm>
#include <cmath>

namespace mtcsim {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p] * x[col[p]];
    y[i] = s;
  }
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return val[static_cast<std::size_t>(it - col.begin())];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) d[i] = at(i, i);
  return d;
}

bool CsrMatrix::is_symmetric(double rel_tol) const {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const double a = val[p];
      const double b = at(col[p], i);
      if (std::abs(a - b) > rel_tol * std::max(std::abs(a), std::abs(b))) return false;
    }
  }
  return true;
}

}  // namespace mtcsim
