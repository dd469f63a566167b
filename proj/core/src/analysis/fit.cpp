#include "mtcsim/analysis/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "least_squares.hpp"
#include "mtcsim/error.hpp"

namespace mtcsim {

void PTCurve::validate(std::optional<double> ambient) const {
  if (samples.empty()) throw InputError("P-T curve is empty");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.power) || !std::isfinite(s.temperature)) throw InputError("P-T curve has a non-finite sample");
    if (s.power < 0.0) throw InputError("P-T curve has a negative power");
    if (i > 0 && !(s.power > samples[i - 1].power)) throw InputError("P-T curve powers must strictly increase");
    if (ambient && s.temperature < *ambient) throw InputError("P-T curve temperature below ambient");
  }
}

std::vector<double> PTCurve::powers_mw() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.power * 1e3);
  return out;
}

std::vector<double> PTCurve::temperatures() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.temperature);
  return out;
}

QuadraticFit fit_polynomial2(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("fit abscissa and ordinate sizes differ");
  if (std::set<double>(x.begin(), x.end()).size() < 3) {
    throw InputError("rank deficiency: a quadratic fit needs at least 3 distinct powers");
  }
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v - mean));

  const auto a = detail::polyfit_scaled<3>(x, y, mean, scale);
  QuadraticFit fit;
  const double m = mean / scale;
  fit.c0 = a[0] - a[1] * m + a[2] * m * m;
  fit.c1 = (a[1] - 2.0 * a[2] * m) / scale;
  fit.c2 = a[2] / (scale * scale);
  fit.samples = x.size();

  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = (x[i] - mean) / scale;
    const double r = y[i] - (a[0] + (a[1] + a[2] * s) * s);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(x.size()));
  return fit;
}

QuadraticFit fit_quadratic(const PTCurve& curve) {
  curve.validate();
  const auto p = curve.powers_mw();
  const auto t = curve.temperatures();
  return fit_polynomial2(p, t);
}

std::optional<double> power_for_temperature(const QuadraticFit& fit, double temperature) {
  const double a = fit.c2;
  const double b = fit.c1;
  const double c = fit.c0 - temperature;
  if (c >= 0.0) return 0.0;
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::nullopt;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q != 0.0) roots.push_back(c / q);
    roots.push_back(q / a);
  }
  std::optional<double> best;
  for (double r : roots) {
    if (r >= 0.0 && (!best || r < *best)) best = r;
  }
  return best;
}

}  // namespace mtcsim
