#include <gtest/gtest.h>

#include <random>

#include "mtcsim/analysis/calibration.hpp"
#include "mtcsim/error.hpp"

namespace mtcsim {
namespace {

TEST(Calibration, ExactLine) {
  std::vector<CalibrationSample> s;
  for (double t : {300.0, 350.0, 400.0, 450.0, 500.0}) s.push_back({t, 0.001 * t + 0.2});
  const auto c = fit_linear_calibration(s, 1e-3);
  EXPECT_NEAR(c.slope, 0.001, 1e-15);
  EXPECT_NEAR(c.intercept, 0.2, 1e-12);
  EXPECT_LT(c.residual_rms, 1e-14);
  EXPECT_EQ(c.bias_current, 1e-3);
}

TEST(Calibration, TwoPointsInterpolate) {
  const std::vector<CalibrationSample> s{{300, 0.5}, {400, 0.62}};
  const auto c = fit_linear_calibration(s, 1e-3);
  EXPECT_NEAR(c.voltage_at(300), 0.5, 1e-14);
  EXPECT_NEAR(c.voltage_at(400), 0.62, 1e-14);
}

TEST(Calibration, MatchesClosedForm) {
  std::mt19937 rng(99);
  std::normal_distribution<double> noise(0.0, 1e-4);
  std::vector<CalibrationSample> s;
  for (int i = 0; i < 15; ++i) {
    const double t = 300 + 25.0 * i;
    s.push_back({t, 0.0012 * t + 0.18 + noise(rng)});
  }
  double st = 0, sv = 0, stt = 0, stv = 0;
  const double n = static_cast<double>(s.size());
  for (const auto& x : s) {
    st += x.temperature;
    sv += x.voltage;
    stt += x.temperature * x.temperature;
    stv += x.temperature * x.voltage;
  }
  const double slope = (n * stv - st * sv) / (n * stt - st * st);
  const double intercept = (sv - slope * st) / n;
  const auto c = fit_linear_calibration(s, 1e-3);
  EXPECT_NEAR(c.slope, slope, 1e-10);
  EXPECT_NEAR(c.intercept, intercept, 1e-10);
}

TEST(Calibration, Inverse) {
  const CalibrationCurve c{0.001, 0.2, 1e-3, 0.0, 2};
  EXPECT_NEAR(voltage_to_temperature(c, 0.5), 300.0, 1e-12);
  for (double t : {250.0, 300.0, 612.5, 1000.0}) EXPECT_NEAR(voltage_to_temperature(c, c.voltage_at(t)), t, 1e-12);
}

TEST(Calibration, Degenerate) {
  EXPECT_THROW(voltage_to_temperature(CalibrationCurve{0.0, 0.2, 1e-3, 0.0, 2}, 0.5), InputError);
  const std::vector<CalibrationSample> same{{300, 0.5}, {300, 0.6}};
  EXPECT_THROW(fit_linear_calibration(same, 1e-3), InputError);
  const std::vector<CalibrationSample> flat{{300, 0.5}, {400, 0.5}};
  EXPECT_THROW(fit_linear_calibration(flat, 1e-3), InputError);
}

}  // namespace
}  // namespace mtcsim
