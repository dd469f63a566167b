#pragma once

#include <cstddef>
#include <span>

namespace mtcsim {

struct CalibrationSample {
  double temperature = 0.0;  // K
  double voltage = 0.0;      // V
};

/// Linear sensor response V = slope·T + intercept at a constant bias current.
struct CalibrationCurve {
  double slope = 0.0;         // V/K
  double intercept = 0.0;     // V
  double bias_current = 0.0;  // A
  double residual_rms = 0.0;  // V
  std::size_t samples = 0;

  double voltage_at(double temperature) const { return slope * temperature + intercept; }
};

/// Least-squares line through (T, V) samples. Throws InputError with fewer
/// than two distinct temperatures.
CalibrationCurve fit_linear_calibration(std::span<const CalibrationSample> samples, double bias_current);

/// Inverts the calibration line. Throws InputError for a zero slope.
double voltage_to_temperature(const CalibrationCurve& cal, double voltage);

}  // namespace mtcsim
