#include <gtest/gtest.h>

#include <cmath>

#include "mtcsim/error.hpp"
#include "mtcsim/grid_builder.hpp"
#include "mtcsim/probe.hpp"
#include "mtcsim/steady.hpp"
#include "mtcsim/transient.hpp"
#include "test_support.hpp"

namespace mtcsim {
namespace {

using testing::heater_scenario;
using testing::reference_like_materials;
using testing::small_hotplate;
using testing::small_resolution;

struct LumpedRc {
  MaterialTable mats;
  VoxelGrid grid;
  ScenarioSpec scenario;
  double r = 0.0, c = 0.0, rise = 0.0;
};

// One voxel coupled to a fixed x- face: G = k·A/(dx/2), C = rho·c·V.
LumpedRc lumped_rc(double power) {
  LumpedRc m;
  const double k = 50.0, cv = 2e6, h = 10e-6;
  m.mats = testing::single_material(k, cv);
  m.grid = VoxelGrid::uniform(1, 1, 1, h, h, h, 0);
  m.scenario.boundary = {FixedTemperatureFace{Face::x_minus, {}, {}}};
  m.scenario.sources.push_back(HeatSource{"q", RegionRef{"all", {}}, power});
  m.scenario.probes.push_back(ProbeSpec{"t", RegionRef{"all", {}}, Statistic::average});
  const double g = k * h * h / (h / 2);
  m.r = 1.0 / g;
  m.c = cv * h * h * h;
  m.rise = power * m.r;
  return m;
}

TEST(Transient, NoSourceStaysAtAmbient) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  TransientOptions opt;
  opt.t_end = 1e-3;
  opt.dt = 1e-4;
  const auto r = run_transient(g, mats, heater_scenario(0.0), nullptr, opt);
  ASSERT_TRUE(r.trace.ok);
  for (const auto& series : r.trace.series) {
    for (double v : series) EXPECT_EQ(v, 300.0);
  }
}

TEST(Transient, LumpedRcMatchesExponential) {
  const auto m = lumped_rc(1e-3);
  const double tau = m.r * m.c;
  TransientOptions opt;
  opt.dt = tau / 100;
  opt.t_end = 5 * tau;
  const auto r = run_transient(m.grid, m.mats, m.scenario, nullptr, opt);
  ASSERT_TRUE(r.trace.ok);
  const auto col = r.trace.column("t");
  for (std::size_t i = 1; i < col.size(); ++i) {
    const double exact = m.rise * (1 - std::exp(-r.trace.times[i] / tau));
    EXPECT_NEAR(col[i] - 300.0, exact, 0.01 * exact) << "t = " << r.trace.times[i];
  }
}

TEST(Transient, TraceInvariants) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  TransientOptions opt;
  opt.t_end = 0.95e-3;
  opt.dt = 0.1e-3;
  const auto r = run_transient(g, mats, heater_scenario(1e-3), nullptr, opt);
  ASSERT_TRUE(r.trace.ok);
  const auto& t = r.trace.times;
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 0.95e-3);
  EXPECT_EQ(r.trace.step_sizes.size(), t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GT(t[i], t[i - 1]);
  EXPECT_EQ(r.trace.scheme, "backward-euler");
  EXPECT_EQ(r.trace.column("sensor_avg").front(), 300.0);
}

TEST(Transient, HeaterMaxAboveSensorAverageAndRising) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  TransientOptions opt;
  opt.t_end = 2e-3;
  opt.dt = 20e-6;
  const auto r = run_transient(g, mats, heater_scenario(1e-3), nullptr, opt);
  ASSERT_TRUE(r.trace.ok);
  const auto hm = r.trace.column("heater_max");
  const auto sa = r.trace.column("sensor_avg");
  for (std::size_t i = 1; i < hm.size(); ++i) {
    EXPECT_GE(hm[i], sa[i]);
    EXPECT_GE(hm[i], hm[i - 1]);
    EXPECT_GE(sa[i], sa[i - 1]);
  }
}

TEST(Transient, ApproachesSteadyState) {
  const auto mats = reference_like_materials(true);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  const auto s = heater_scenario(1e-3);
  const auto steady = solve_steady(g, mats, s);
  TransientOptions opt;
  opt.t_end = 20e-3;
  opt.dt = 50e-6;
  const auto r = run_transient(g, mats, s, nullptr, opt);
  const double target = probe(g, steady.field, RegionRef{"sensor", {}}, Statistic::average);
  const double reached = r.trace.column("sensor_avg").back();
  EXPECT_NEAR(reached, target, 1e-3 * (target - 300.0));
}

TEST(Transient, SnapshotsCaptured) {
  const auto m = lumped_rc(1e-3);
  TransientOptions opt;
  opt.dt = 1e-5;
  opt.t_end = 1e-4;
  opt.snapshot_times = {5e-5, 0.0};
  const auto r = run_transient(m.grid, m.mats, m.scenario, nullptr, opt);
  ASSERT_EQ(r.snapshots.size(), 2u);
  EXPECT_EQ(r.snapshots[0].first, 0.0);
  EXPECT_NEAR(r.snapshots[1].first, 5e-5, 1e-15);
}

TEST(Transient, StartsFromGivenField) {
  const auto m = lumped_rc(0.0);
  TemperatureField init;
  init.values = {350.0};
  TransientOptions opt;
  opt.dt = 1e-6;
  opt.t_end = 1e-5;
  const auto r = run_transient(m.grid, m.mats, m.scenario, &init, opt);
  EXPECT_EQ(r.trace.column("t").front(), 350.0);
  EXPECT_LT(r.trace.column("t").back(), 350.0);
}

TEST(Transient, BadStepRejected) {
  const auto m = lumped_rc(1e-3);
  TransientOptions opt;
  opt.t_end = 1e-3;
  opt.dt = 0.0;
  EXPECT_THROW(run_transient(m.grid, m.mats, m.scenario, nullptr, opt), InputError);
  opt.dt = -1e-6;
  EXPECT_THROW(run_transient(m.grid, m.mats, m.scenario, nullptr, opt), InputError);
  opt.dt = 1e-6;
  opt.t_end = 0.0;
  EXPECT_THROW(run_transient(m.grid, m.mats, m.scenario, nullptr, opt), InputError);
}

TEST(Transient, SolverFailureTruncatesTrace) {
  const auto mats = reference_like_materials(false);
  const auto g = build_grid(small_hotplate(), small_resolution(), mats);
  TransientOptions opt;
  opt.t_end = 1e-3;
  opt.dt = 1e-4;
  opt.cg.max_iterations = 1;
  const auto r = run_transient(g, mats, heater_scenario(1e-3), nullptr, opt);
  EXPECT_FALSE(r.trace.ok);
  EXPECT_FALSE(r.trace.message.empty());
  EXPECT_LT(r.trace.times.size(), 11u);
}

}  // namespace
}  // namespace mtcsim
