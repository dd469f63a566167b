#include <gtest/gtest.h>

#include "mtcsim/error.hpp"
#include "mtcsim/units.hpp"

namespace mtcsim {
namespace {

TEST(Units, LengthSuffixes) {
  EXPECT_DOUBLE_EQ(parse_quantity("150um", Dimension::length), 150e-6);
  EXPECT_DOUBLE_EQ(parse_quantity("500nm", Dimension::length), 500e-9);
  EXPECT_DOUBLE_EQ(parse_quantity("500 nm", Dimension::length), 500e-9);
  EXPECT_DOUBLE_EQ(parse_quantity("2\xC2\xB5m", Dimension::length), 2e-6);
  EXPECT_DOUBLE_EQ(parse_quantity("1.5mm", Dimension::length), 1.5e-3);
  EXPECT_DOUBLE_EQ(parse_quantity("0.25m", Dimension::length), 0.25);
}

TEST(Units, OtherDimensions) {
  EXPECT_DOUBLE_EQ(parse_quantity("1mW", Dimension::power), 1e-3);
  EXPECT_DOUBLE_EQ(parse_quantity("250uW", Dimension::power), 250e-6);
  EXPECT_DOUBLE_EQ(parse_quantity("300K", Dimension::temperature), 300.0);
  EXPECT_DOUBLE_EQ(parse_quantity("10ms", Dimension::time), 10e-3);
  EXPECT_DOUBLE_EQ(parse_quantity("1mA", Dimension::current), 1e-3);
  EXPECT_DOUBLE_EQ(parse_quantity("200mV", Dimension::voltage), 0.2);
}

TEST(Units, DecimalPrefixesRoundLikeLiterals) {
  EXPECT_EQ(parse_quantity("20us", Dimension::time), 20e-6);
  EXPECT_EQ(parse_quantity("150nm", Dimension::length), 150e-9);
  EXPECT_EQ(parse_quantity("3mW", Dimension::power), 3e-3);
}

TEST(Units, BareNumberIsSi) {
  EXPECT_DOUBLE_EQ(parse_quantity("1e-6", Dimension::length), 1e-6);
  EXPECT_DOUBLE_EQ(parse_quantity("  42 ", Dimension::temperature), 42.0);
}

TEST(Units, RejectsWrongDimensionAndGarbage) {
  EXPECT_THROW(parse_quantity("1mW", Dimension::length), InputError);
  EXPECT_THROW(parse_quantity("5furlongs", Dimension::length), InputError);
  EXPECT_THROW(parse_quantity("", Dimension::length), InputError);
  EXPECT_THROW(parse_quantity("um", Dimension::length), InputError);
}

}  // namespace
}  // namespace mtcsim
