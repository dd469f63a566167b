#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mtcsim {

struct PTSample {
  double power = 0.0;        // W
  double temperature = 0.0;  // K
};

/// Power-to-temperature conversion characteristic.
struct PTCurve {
  std::vector<PTSample> samples;

  /// Throws InputError unless P >= 0 strictly increases and, when an ambient
  /// is given, every T >= ambient.
  void validate(std::optional<double> ambient = std::nullopt) const;
  std::vector<double> powers_mw() const;
  std::vector<double> temperatures() const;
};

/// T(P) = c0 + c1·P + c2·P², P in mW.
struct QuadraticFit {
  double c0 = 0.0;  // K
  double c1 = 0.0;  // K/mW
  double c2 = 0.0;  // K/mW²
  double residual_rms = 0.0;  // K
  std::size_t samples = 0;

  double evaluate(double power_mw) const { return c0 + (c1 + c2 * power_mw) * power_mw; }
};

/// Ordinary least squares on [1, x, x²] in the caller's units of x. The
/// abscissa is centered and scaled internally and the coefficients mapped
/// back. Throws InputError with fewer than three distinct x.
QuadraticFit fit_polynomial2(std::span<const double> x, std::span<const double> y);

/// Quadratic P–T fit with powers expressed in mW.
QuadraticFit fit_quadratic(const PTCurve& curve);

/// dT/dP of the fit, K/mW.
inline double thermal_resistance(const QuadraticFit& fit, double power_mw) {
  return fit.c1 + 2.0 * fit.c2 * power_mw;
}

/// Smallest power >= 0 (mW) at which the fit reaches `temperature`, if any.
std::optional<double> power_for_temperature(const QuadraticFit& fit, double temperature);

}  // namespace mtcsim
