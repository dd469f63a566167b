#include "mtcsim/analysis/time_constant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mtcsim {

TimeConstant extract_time_constant(std::span<const double> times, std::span<const double> values) {
  using Reason = TimeConstantError::Reason;
  if (times.size() != values.size()) throw InputError("trace times and values differ in length");
  const std::size_t n = values.size();
  if (n < 3) throw TimeConstantError(Reason::too_short, "trace too short to extract a time constant");

  TimeConstant out;
  out.initial = values.front();
  out.settled = values.back();
  const double rise = out.rise();
  const double magnitude = std::max(std::abs(out.initial), std::abs(out.settled));
  if (!(std::abs(rise) > 1e-12 * magnitude)) {
    throw TimeConstantError(Reason::zero_rise, "trace shows no temperature rise");
  }

  const std::size_t tail = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n))));
  const auto tail_begin = values.end() - static_cast<std::ptrdiff_t>(tail);
  const auto [lo, hi] = std::minmax_element(tail_begin, values.end());
  if (*hi - *lo >= 0.005 * std::abs(rise)) {
    throw TimeConstantError(Reason::unsettled, "trace has not settled: last 5% of samples vary by " +
                                                   std::to_string(100.0 * (*hi - *lo) / std::abs(rise)) +
                                                   "% of the rise");
  }

  const auto fraction = [&](std::size_t i) { return (values[i] - out.initial) / rise; };

  bool found = false;
  for (std::size_t i = 1; i < n; ++i) {
    const double f0 = fraction(i - 1);
    const double f1 = fraction(i);
    const bool up = f0 < kTauRiseFraction && f1 >= kTauRiseFraction;
    const bool down = f0 >= kTauRiseFraction && f1 < kTauRiseFraction;
    if (up || down) ++out.crossings;
    if (up && !found) {
      const double w = (kTauRiseFraction - f0) / (f1 - f0);
      out.tau_crossing = times[i - 1] + w * (times[i] - times[i - 1]) - times.front();
      found = true;
    }
  }
  if (!found) throw TimeConstantError(Reason::zero_rise, "trace never reaches 63.2% of its rise");
  if (out.crossings > 1) {
    out.warnings.push_back("non-monotone trace: " + std::to_string(out.crossings) +
                           " crossings of the 63.2% level; first crossing used");
  }

  // ln(1 - f) = -(t - t0)/tau over the 10–90 % window.
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = fraction(i);
    if (f < 0.1 || f > 0.9) continue;
    const double t = times[i] - times.front();
    const double y = std::log(1.0 - f);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++m;
  }
  const double denom = static_cast<double>(m) * stt - st * st;
  if (m >= 2 && denom > 0.0) {
    const double slope = (static_cast<double>(m) * sty - st * sy) / denom;
    out.tau_fit = slope < 0.0 ? -1.0 / slope : std::numeric_limits<double>::quiet_NaN();
  } else {
    out.tau_fit = std::numeric_limits<double>::quiet_NaN();
    out.warnings.push_back("too few samples in the 10-90% window for the exponential fit");
  }
  return out;
}

TimeConstant extract_time_constant(const TransientTrace& trace, std::string_view probe) {
  return extract_time_constant(trace.times, trace.column(probe));
}

}  // namespace mtcsim
