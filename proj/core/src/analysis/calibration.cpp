#include "mtcsim/analysis/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "least_squares.hpp"
#include "mtcsim/error.hpp"

namespace mtcsim {

CalibrationCurve fit_linear_calibration(std::span<const CalibrationSample> samples, double bias_current) {
  std::vector<double> t, v;
  for (const auto& s : samples) {
    if (!std::isfinite(s.temperature) || !std::isfinite(s.voltage)) {
      throw InputError("calibration sample is not finite");
    }
    t.push_back(s.temperature);
    v.push_back(s.voltage);
  }
  if (std::set<double>(t.begin(), t.end()).size() < 2) {
    throw InputError("rank deficiency: calibration needs at least 2 distinct temperatures");
  }
  double mean = 0.0;
  for (double x : t) mean += x;
  mean /= static_cast<double>(t.size());
  double scale = 0.0;
  for (double x : t) scale = std::max(scale, std::abs(x - mean));

  const auto a = detail::polyfit_scaled<2>(t, v, mean, scale);
  CalibrationCurve cal;
  cal.slope = a[1] / scale;
  cal.intercept = a[0] - a[1] * mean / scale;
  cal.bias_current = bias_current;
  cal.samples = t.size();
  double ss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = v[i] - (a[0] + a[1] * (t[i] - mean) / scale);
    ss += r * r;
  }
  cal.residual_rms = std::sqrt(ss / static_cast<double>(t.size()));
  if (!std::isfinite(cal.slope) || cal.slope == 0.0) {
    throw InputError("calibration slope is zero or not finite; the sensor does not respond to temperature");
  }
  return cal;
}

double voltage_to_temperature(const CalibrationCurve& cal, double voltage) {
  if (cal.slope == 0.0 || !std::isfinite(cal.slope)) throw InputError("calibration slope is zero");
  return (voltage - cal.intercept) / cal.slope;
}

}  // namespace mtcsim
