#include <gtest/gtest.h>

#include <cmath>

#include "mtcsim/error.hpp"
#include "mtcsim/flux.hpp"
#include "mtcsim/grid_builder.hpp"
#include "mtcsim/probe.hpp"
#include "mtcsim/steady.hpp"
#include "test_support.hpp"

namespace mtcsim {
namespace {

using testing::heater_scenario;
using testing::reference_like_materials;
using testing::small_hotplate;
using testing::small_resolution;

TEST(Probe, UniformField) {
  const auto g = VoxelGrid::uniform(3, 2, 2, 1e-6, 1e-6, 1e-6, 0);
  TemperatureField f;
  f.values.assign(g.size(), 300.0);
  EXPECT_EQ(probe(g, f, RegionRef{"all", {}}, Statistic::average), 300.0);
  EXPECT_EQ(probe(g, f, RegionRef{"all", {}}, Statistic::max), 300.0);
}

TEST(Probe, LinearProfileAverage) {
  const auto mats = testing::single_material(10.0);
  const auto g = testing::rod_grid(101, 101e-6);
  const auto r = solve_steady(g, mats, testing::rod_scenario(300, 400));
  EXPECT_NEAR(probe(g, r.field, RegionRef{"all", {}}, Statistic::average), 350.0, 1e-9);
}

TEST(Probe, BoxRegion) {
  const auto g = VoxelGrid::uniform(4, 1, 1, 1e-6, 1e-6, 1e-6, 0);
  TemperatureField f;
  f.values = {300, 310, 320, 330};
  const Box box{{1e-6, 0, 0}, {3e-6, 1e-6, 1e-6}};
  EXPECT_EQ(probe(g, f, RegionRef{"mid", box}, Statistic::average), 315.0);
  EXPECT_EQ(probe(g, f, RegionRef{"mid", box}, Statistic::max), 320.0);
}

TEST(Probe, EmptyRegionRejected) {
  const auto g = VoxelGrid::uniform(4, 1, 1, 1e-6, 1e-6, 1e-6, 0);
  TemperatureField f;
  f.values = {300, NAN, NAN, 330};
  const Box box{{1e-6, 0, 0}, {3e-6, 1e-6, 1e-6}};
  EXPECT_THROW(probe(g, f, RegionRef{"holes", box}, Statistic::average), InputError);
  const Box outside{{10e-6, 0, 0}, {12e-6, 1e-6, 1e-6}};
  EXPECT_THROW(probe(g, f, RegionRef{"out", outside}, Statistic::max), InputError);
}

TEST(Probe, HeaterMaxAboveSensorAverage) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const auto r = solve_steady(g, mats, heater_scenario(2e-3));
  EXPECT_GE(probe(g, r.field, RegionRef{"heater", {}}, Statistic::max),
            probe(g, r.field, RegionRef{"sensor", {}}, Statistic::average));
}

TEST(Flux, ZeroPowerZeroFlux) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const Discretization d(g, mats, heater_scenario(0.0));
  const auto r = solve_steady(d);
  EXPECT_EQ(boundary_flux(d, r.field), 0.0);
  EXPECT_EQ(energy_balance(d, r.field).relative_error, 0.0);
}

TEST(Flux, ConstantKBalance) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const Discretization d(g, mats, heater_scenario(1e-3));
  const auto r = solve_steady(d);
  const auto b = energy_balance(d, r.field);
  EXPECT_NEAR(b.injected, 1e-3, 1e-15);
  EXPECT_LT(b.relative_error, 1e-6);
}

TEST(Flux, NonlinearBalance) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const Discretization d(g, mats, heater_scenario(20e-3));
  const auto r = solve_steady(d);
  ASSERT_TRUE(r.converged);
  EXPECT_LT(energy_balance(d, r.field).relative_error, 1e-4);
}

TEST(Flux, RodHeatFlow) {
  const double k = 10.0, len = 10e-6, side = 1e-6;
  const auto g = testing::rod_grid(10, len, side);
  const Discretization d(g, testing::single_material(k), testing::rod_scenario(300, 400));
  const auto r = solve_steady(d);
  // Heat enters at x+ and leaves at x-: net boundary flux is zero, per-face k·A·ΔT/L.
  EXPECT_NEAR(boundary_flux(d, r.field), 0.0, 1e-12);
}

}  // namespace
}  // namespace mtcsim
