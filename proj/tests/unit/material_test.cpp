#include <gtest/gtest.h>

#include "mtcsim/error.hpp"
#include "mtcsim/material.hpp"
#include "mtcsim/voxel_grid.hpp"

namespace mtcsim {
namespace {

TEST(Conductivity, ConstantModel) {
  const auto m = ConductivityModel::constant(46.0);
  EXPECT_EQ(conductivity_at(m, 500.0), 46.0);
  EXPECT_TRUE(m.is_constant());
}

TEST(Conductivity, TableInterpolatesLinearly) {
  const auto m = ConductivityModel::table({{300, 46}, {600, 23}});
  EXPECT_DOUBLE_EQ(conductivity_at(m, 450.0), 34.5);
  EXPECT_DOUBLE_EQ(conductivity_at(m, 300.0), 46.0);
  EXPECT_DOUBLE_EQ(conductivity_at(m, 600.0), 23.0);
}

TEST(Conductivity, TableClampsAndCounts) {
  const auto m = ConductivityModel::table({{300, 46}, {600, 23}});
  reset_clamp_warning_count();
  EXPECT_DOUBLE_EQ(conductivity_at(m, 700.0), 23.0);
  EXPECT_DOUBLE_EQ(conductivity_at(m, 250.0), 46.0);
  EXPECT_EQ(clamp_warning_count(), 2u);
  conductivity_at(m, 400.0);
  EXPECT_EQ(clamp_warning_count(), 2u);
}

TEST(Conductivity, TableValidation) {
  EXPECT_THROW(ConductivityModel::table({{300, 46}, {300, 23}}), InputError);
  EXPECT_THROW(ConductivityModel::table({{400, 46}, {300, 23}}), InputError);
  EXPECT_THROW(ConductivityModel::table({{300, 46}, {600, 0}}), InputError);
  EXPECT_THROW(ConductivityModel::table({}), InputError);
  EXPECT_TRUE(ConductivityModel::table({{300, 5}}).is_constant());
}

TEST(Conductivity, ConstantMustBePositive) {
  EXPECT_THROW(ConductivityModel::constant(0.0), InputError);
  EXPECT_THROW(ConductivityModel::constant(-1.0), InputError);
}

TEST(MaterialTable, LookupAndDuplicates) {
  MaterialTable t;
  t.add(Material{"GaAs", ConductivityModel::constant(46), 1.74e6, ""});
  EXPECT_EQ(t.index_of("GaAs"), 0u);
  EXPECT_FALSE(t.find("Si"));
  EXPECT_THROW(t.index_of("Si"), InputError);
  EXPECT_THROW(t.add(Material{"GaAs", ConductivityModel::constant(1), 1.0, ""}), InputError);
  EXPECT_THROW(t.add(Material{"bad", ConductivityModel::constant(1), 0.0, ""}), InputError);
}

TEST(VoxelMaterial, ThinFilmMixing) {
  MaterialTable t;
  t.add(Material{"a", ConductivityModel::constant(10), 1e6, ""});
  t.add(Material{"b", ConductivityModel::constant(100), 3e6, ""});
  VoxelMaterial vm{"a+b", {{0, 1.0}, {1, 0.5}}};
  // Parallel in-plane, series through-plane, capacities add by thickness.
  EXPECT_DOUBLE_EQ(vm.inplane_conductivity(t, 300), 10 * 1.0 + 100 * 0.5);
  EXPECT_DOUBLE_EQ(vm.through_conductivity(t, 300), 1.0 / (1.0 / 10 + 0.5 / 100));
  EXPECT_DOUBLE_EQ(vm.heat_capacity(t), 1e6 + 0.5 * 3e6);
  EXPECT_TRUE(vm.is_constant(t));
}

}  // namespace
}  // namespace mtcsim
