#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mtcsim/error.hpp"
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

TEST(Steady, ZeroPowerIsUniformAmbient) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const auto r = solve_steady(g, mats, heater_scenario(0.0));
  ASSERT_TRUE(r.converged);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (r.field.has(v)) EXPECT_EQ(r.field[v], 300.0);
  }
}

TEST(Steady, ConstantConductivityTakesOnePass) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const auto r = solve_steady(g, mats, heater_scenario(1e-3));
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.field.picard_iterations, 1u);
  EXPECT_FALSE(r.field.scenario_hash.empty());
}

TEST(Steady, TemperatureDependentConductivityIterates) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const auto r = solve_steady(g, mats, heater_scenario(5e-3));
  ASSERT_TRUE(r.converged) << r.message;
  EXPECT_GT(r.field.picard_iterations, 1u);
  EXPECT_LE(r.history.back().max_change, 1e-6);
  // Lower k at higher T means a hotter plate than the constant-k solve.
  const auto c = solve_steady(g, reference_like_materials(false), heater_scenario(5e-3));
  const auto hot = probe(g, r.field, RegionRef{"sensor", {}}, Statistic::average);
  const auto cold = probe(g, c.field, RegionRef{"sensor", {}}, Statistic::average);
  EXPECT_GT(hot, cold);
}

TEST(Steady, PicardNonConvergenceReportsHistory) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  SteadyOptions opt;
  opt.max_picard_iterations = 2;
  const auto r = solve_steady(g, mats, heater_scenario(5e-3), opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.history.size(), 2u);
  EXPECT_NE(r.message.find("Picard"), std::string::npos);
}

TEST(Steady, DampedPicardReachesSameFixedPoint) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  SteadyOptions damped;
  damped.damping = 0.7;
  damped.picard_tolerance = 1e-8;
  SteadyOptions plain;
  plain.picard_tolerance = 1e-8;
  const auto a = solve_steady(g, mats, heater_scenario(5e-3), damped);
  const auto b = solve_steady(g, mats, heater_scenario(5e-3), plain);
  ASSERT_TRUE(a.converged && b.converged);
  EXPECT_LT(testing::max_abs_diff(a.field.values, b.field.values), 1e-5);
}

TEST(Steady, InvalidOptionsRejected) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  SteadyOptions opt;
  opt.damping = 0.0;
  EXPECT_THROW(solve_steady(g, mats, heater_scenario(1e-3), opt), InputError);
  opt.damping = 1.5;
  EXPECT_THROW(solve_steady(g, mats, heater_scenario(1e-3), opt), InputError);
}

TEST(Steady, UniformGenerationRodMatchesParabola) {
  // Rod with both ends at T0 and uniform q: T(x) = T0 + q x (L - x) / (2k).
  const double k = 20.0, length = 100e-6, side = 1e-6, t0 = 300.0, power = 2e-6;
  const double q = power / (length * side * side);
  const auto mats = testing::single_material(k);
  const int n = 200;
  const auto g = testing::rod_grid(n, length, side);
  auto s = testing::rod_scenario(t0, t0);
  s.sources.push_back(HeatSource{"all", RegionRef{"all", {}}, power});
  const auto r = solve_steady(g, mats, s);
  ASSERT_TRUE(r.converged);
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * length / n;
    err = std::max(err, std::abs(r.field[static_cast<std::size_t>(i)] - (t0 + q * x * (length - x) / (2 * k))));
  }
  const double rise = q * length * length / (8 * k);
  EXPECT_LT(err, 1e-3 * rise);
}

TEST(Steady, PlateHotterThanFrame) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const auto r = solve_steady(g, mats, heater_scenario(1e-3));
  const double frame_max = probe(g, r.field, RegionRef{"frame", {}}, Statistic::max);
  double island_min = 1e9;
  for (auto v : region_voxels(g, g.regions.at("island"))) island_min = std::min(island_min, r.field[v]);
  EXPECT_GT(island_min, frame_max);
}

}  // namespace
}  // namespace mtcsim
