#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtcsim/error.hpp"
#include "mtcsim/transient.hpp"

namespace mtcsim {

/// Step-response time constant of one probe trace.
struct TimeConstant {
  double tau_crossing = 0.0;  // s, first crossing of 1 - 1/e of the settled rise
  double tau_fit = 0.0;       // s, log-linear fit over the 10–90 % rise window (NaN if too few samples)
  double initial = 0.0;       // K
  double settled = 0.0;       // K
  std::size_t crossings = 0;
  std::vector<std::string> warnings;

  double rise() const { return settled - initial; }
};

class TimeConstantError : public InputError {
 public:
  enum class Reason { too_short, zero_rise, unsettled };

  TimeConstantError(Reason reason, const std::string& what) : InputError(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Fraction of the settled rise that defines tau (1 - e^-1).
inline constexpr double kTauRiseFraction = 0.63212055882855767;

/// The settled value is the last sample; the trace counts as settled when
/// the last 5 % of samples span less than 0.5 % of the rise.
TimeConstant extract_time_constant(std::span<const double> times, std::span<const double> values);
TimeConstant extract_time_constant(const TransientTrace& trace, std::string_view probe);

}  // namespace mtcsim
