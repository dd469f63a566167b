#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtcsim/error.hpp"

namespace mtcsim::detail {

/// Least-squares polynomial of degree p-1 in x via Householder QR of the
/// Vandermonde matrix built on the centered, scaled abscissa
/// s = (x - shift) / scale. Returns coefficients in s; throws InputError on
/// numerical rank deficiency.
template <std::size_t P>
std::array<double, P> polyfit_scaled(std::span<const double> x, std::span<const double> y, double shift,
                                     double scale) {
  const std::size_t m = x.size();
  if (m < P) throw InputError("rank deficiency: need at least " + std::to_string(P) + " samples");
  std::vector<std::array<double, P>> a(m);
  std::vector<double> b(y.begin(), y.end());
  for (std::size_t i = 0; i < m; ++i) {
    const double s = (x[i] - shift) / scale;
    double v = 1.0;
    for (std::size_t j = 0; j < P; ++j) {
      a[i][j] = v;
      v *= s;
    }
  }
  std::array<double, P> diag{};
  for (std::size_t j = 0; j < P; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < m; ++i) norm += a[i][j] * a[i][j];
    norm = std::sqrt(norm);
    if (norm == 0.0) throw InputError("rank deficiency in least-squares fit");
    const double alpha = a[j][j] > 0.0 ? -norm : norm;
    // v = a[j:, j] - alpha e_1, stored in place
    a[j][j] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < m; ++i) vnorm2 += a[i][j] * a[i][j];
    if (vnorm2 > 0.0) {
      for (std::size_t c = j + 1; c < P; ++c) {
        double d = 0.0;
        for (std::size_t i = j; i < m; ++i) d += a[i][j] * a[i][c];
        const double f = 2.0 * d / vnorm2;
        for (std::size_t i = j; i < m; ++i) a[i][c] -= f * a[i][j];
      }
      double d = 0.0;
      for (std::size_t i = j; i < m; ++i) d += a[i][j] * b[i];
      const double f = 2.0 * d / vnorm2;
      for (std::size_t i = j; i < m; ++i) b[i] -= f * a[i][j];
    }
    diag[j] = alpha;
  }
  double rmax = 0.0;
  for (double d : diag) rmax = std::max(rmax, std::abs(d));
  for (double d : diag) {
    if (std::abs(d) <= 1e-12 * rmax) throw InputError("rank deficiency in least-squares fit");
  }
  std::array<double, P> c{};
  for (std::size_t jj = P; jj-- > 0;) {
    double s = b[jj];
    for (std::size_t k = jj + 1; k < P; ++k) s -= a[jj][k] * c[k];
    c[jj] = s / diag[jj];
  }
  return c;
}

}  // namespace mtcsim::detail
