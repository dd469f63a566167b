#include <gtest/gtest.h>

#include "mtcsim/analysis/sweep.hpp"
#include "mtcsim/error.hpp"
#include "mtcsim/grid_builder.hpp"
#include "test_support.hpp"

namespace mtcsim {
namespace {

using testing::heater_scenario;
using testing::reference_like_materials;
using testing::small_hotplate;
using testing::small_resolution;

TEST(Sweep, ZeroPowerIsAmbient) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const std::vector<double> p{0.0};
  const auto r = power_sweep(g, mats, heater_scenario(1e-3), p);
  ASSERT_EQ(r.curve.samples.size(), 1u);
  EXPECT_EQ(r.curve.samples[0].power, 0.0);
  EXPECT_NEAR(r.curve.samples[0].temperature, 300.0, 1e-12);
  EXPECT_EQ(r.probe, "sensor_avg");
}

TEST(Sweep, ConstantConductivityIsLinear) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const std::vector<double> p{0.0, 1e-3, 2e-3, 3e-3};
  const auto r = power_sweep(g, mats, heater_scenario(0.0), p);
  const double d1 = r.curve.samples[1].temperature - 300.0;
  const double d2 = r.curve.samples[2].temperature - 300.0;
  EXPECT_GT(d1, 0.0);
  EXPECT_NEAR(d2, 2.0 * d1, 1e-7 * d1);
  const auto fit = fit_quadratic(r.curve);
  EXPECT_LT(std::abs(fit.c2), 1e-6);
}

TEST(Sweep, DecliningConductivityGivesRisingResistance) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const std::vector<double> p{0.0, 2e-3, 4e-3, 6e-3, 8e-3};
  const auto r = power_sweep(g, mats, heater_scenario(0.0), p);
  double prev = 0.0;
  for (std::size_t i = 1; i < r.curve.samples.size(); ++i) {
    const auto& a = r.curve.samples[i - 1];
    const auto& b = r.curve.samples[i];
    const double slope = (b.temperature - a.temperature) / ((b.power - a.power) * 1e3);
    EXPECT_GE(slope, prev);
    prev = slope;
  }
  EXPECT_GT(fit_quadratic(r.curve).c2, 0.0);
}

TEST(Sweep, RejectsUnorderedPowers) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const std::vector<double> p{1e-3, 1e-3};
  EXPECT_THROW(power_sweep(g, mats, heater_scenario(0.0), p), InputError);
  const std::vector<double> n{-1e-3, 1e-3};
  EXPECT_THROW(power_sweep(g, mats, heater_scenario(0.0), n), InputError);
}

TEST(Sweep, CacheReusesSolves) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  SweepCache cache;
  const std::vector<double> p{0.0, 1e-3, 2e-3};
  const auto a = power_sweep(g, mats, heater_scenario(0.0), p, {}, &cache);
  EXPECT_EQ(cache.size(), 3u);
  const std::vector<double> q{1e-3, 2e-3, 3e-3};
  const auto b = power_sweep(g, mats, heater_scenario(0.0), q, {}, &cache);
  EXPECT_EQ(cache.size(), 4u);
  EXPECT_EQ(a.curve.samples[1].temperature, b.curve.samples[0].temperature);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const std::vector<double> p{0.0, 1e-3, 2e-3, 3e-3};
  SweepOptions one, four;
  four.threads = 4;
  const auto a = power_sweep(g, mats, heater_scenario(0.0), p, one);
  const auto b = power_sweep(g, mats, heater_scenario(0.0), p, four);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(a.curve.samples[i].temperature, b.curve.samples[i].temperature);
    EXPECT_EQ(a.points[i].scenario_hash, b.points[i].scenario_hash);
  }
}

TEST(Sweep, UnknownProbeRejected) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const std::vector<double> p{0.0};
  SweepOptions opt;
  opt.probe = "nope";
  EXPECT_THROW(power_sweep(g, mats, heater_scenario(0.0), p, opt), InputError);
}

}  // namespace
}  // namespace mtcsim
