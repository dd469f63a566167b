#include "mtcsim/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <string>

#include "mtcsim/error.hpp"

namespace mtcsim {
namespace {

struct Suffix {
  std::string_view text;
  Dimension dim;
  double divisor;  // exact power of ten, so "20us" rounds like 20e-6
};

constexpr std::array kSuffixes{
    Suffix{"m", Dimension::length, 1.0},
    Suffix{"mm", Dimension::length, 1e3},
    Suffix{"um", Dimension::length, 1e6},
    Suffix{"\xC2\xB5m", Dimension::length, 1e6},  // µm
    Suffix{"nm", Dimension::length, 1e9},
    Suffix{"W", Dimension::power, 1.0},
    Suffix{"mW", Dimension::power, 1e3},
    Suffix{"uW", Dimension::power, 1e6},
    Suffix{"K", Dimension::temperature, 1.0},
    Suffix{"s", Dimension::time, 1.0},
    Suffix{"ms", Dimension::time, 1e3},
    Suffix{"us", Dimension::time, 1e6},
    Suffix{"A", Dimension::current, 1.0},
    Suffix{"mA", Dimension::current, 1e3},
    Suffix{"uA", Dimension::current, 1e6},
    Suffix{"V", Dimension::voltage, 1.0},
    Suffix{"mV", Dimension::voltage, 1e3},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == s.data()) {
    throw InputError("cannot parse quantity '" + std::string(text) + "'");
  }
  const std::string_view unit = trim(std::string_view(ptr, s.data() + s.size() - ptr));
  if (unit.empty()) return value;
  for (const auto& suffix : kSuffixes) {
    if (suffix.text == unit) {
      if (suffix.dim != dim) {
        throw InputError("quantity '" + std::string(text) + "' has a unit of the wrong dimension");
      }
      return value / suffix.divisor;
    }
  }
  throw InputError("unknown unit '" + std::string(unit) + "' in '" + std::string(text) + "'");
}

}  // namespace mtcsim
