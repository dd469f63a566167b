#pragma once

#include <string_view>

namespace mtcsim {

/// Physical dimension of a config quantity; selects the accepted unit suffixes.
enum class Dimension { length, power, temperature, time, current, voltage };

/// Parses a quantity such as "150um", "500 nm", "1mW", "300K", "20us" into SI.
///
/// A bare number is taken to already be in SI base units. Throws InputError on
/// an unknown suffix or a suffix of the wrong dimension.
double parse_quantity(std::string_view text, Dimension dim);

inline constexpr double kMicrometer = 1e-6;
inline constexpr double kNanometer = 1e-9;
inline constexpr double kMilliwatt = 1e-3;
inline constexpr double kMillisecond = 1e-3;
inline constexpr double kMicrosecond = 1e-6;

}  // namespace mtcsim
