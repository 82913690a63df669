#include <set>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "gridshock/error.hpp"
#include "gridshock/grid.hpp"
#include "gridshock/region.hpp"
#include "temp_dir.hpp"

namespace gridshock {
namespace {

TEST(TowerCount, CeilingOfLengthOverSpacing) {
  EXPECT_EQ(tower_count(2.3, 0.23), 10u);
  EXPECT_EQ(tower_count(2.31, 0.23), 11u);
  EXPECT_EQ(tower_count(0.01, 0.23), 1u);
  EXPECT_THROW(tower_count(1.0, 0.0), Error);
}

TEST(PoleCount, CeilingOfHouseholdsOverCustomers) {
  EXPECT_EQ(pole_count_for(40, 40), 1u);
  EXPECT_EQ(pole_count_for(41, 40), 2u);
  EXPECT_EQ(pole_count_for(0, 40), 0u);
}

TEST(SyntheticGrid, DefaultRegionHitsTargetCounts) {
  auto region = default_region();
  Rng rng(7);
  auto grid = build_synthetic_grid(region.tracts, GridCounts{}, rng);
  EXPECT_EQ(grid.substation_count(), 97u);
  EXPECT_EQ(grid.transmission_count(), 242u);
  EXPECT_EQ(grid.distribution_element_count(), 1433u);
  EXPECT_EQ(grid.conductor_count(), 1433u);
  EXPECT_NO_THROW(grid.validate());
}

TEST(SyntheticGrid, OneTractFortyHouseholdsGetsOnePole) {
  std::vector<Tract> tracts{testing::make_tract("A", 0, 0, 40, 0.5)};
  GridCounts counts;
  counts.n_substations = 1;
  counts.n_generators = 1;
  counts.n_transmission = 1;
  Rng rng(1);
  auto grid = build_synthetic_grid(tracts, counts, rng);
  EXPECT_EQ(grid.pole_count(), 1u);
  EXPECT_EQ(grid.substation_count(), 1u);
}

TEST(SyntheticGrid, TooFewTransmissionElementsCannotConnect) {
  std::vector<Tract> tracts{testing::make_tract("A", 0, 0, 40, 0.5)};
  GridCounts counts;
  counts.n_substations = 5;
  counts.n_generators = 2;
  counts.n_transmission = 3;
  Rng rng(1);
  try {
    build_synthetic_grid(tracts, counts, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CannotConnect);
  }
}

TEST(SyntheticGrid, SameSeedSameGrid) {
  auto region = default_region();
  Rng a(11), b(11);
  auto g1 = build_synthetic_grid(region.tracts, GridCounts{}, a);
  auto g2 = build_synthetic_grid(region.tracts, GridCounts{}, b);
  EXPECT_EQ(grid_to_json(g1), grid_to_json(g2));
}

TEST(SyntheticGrid, TowerCountsFollowLength) {
  auto region = default_region();
  Rng rng(7);
  GridCounts counts;
  auto grid = build_synthetic_grid(region.tracts, counts, rng);
  for (const auto& e : grid.edges()) {
    if (e.kind == EdgeKind::Transmission) {
      EXPECT_EQ(e.n_towers, tower_count(e.length_km, counts.tower_spacing_km));
    }
  }
}

TEST(Grid, PoleWithoutSubstationPathFailsValidation) {
  Grid g({"T"});
  g.add_generator(0, {});
  g.add_pole(0, {}, 0);
  EXPECT_THROW(g.validate(), Error);
}

TEST(Grid, TransmissionCannotTouchPole) {
  Grid g({"T"});
  auto s = g.add_substation(0, {});
  auto p = g.add_pole(0, {}, 0);
  EXPECT_THROW(g.add_transmission(s, p, 1.0, 1), Error);
}

TEST(Grid, UnknownTractRejected) {
  Grid g({"T"});
  try {
    g.add_substation(3, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownTract);
  }
}

TEST(Grid, TransmissionContributesTowerAndLine) {
  auto b = testing::build(testing::GridSketch{}.gen("G").sub("S").line("G", "S"));
  const auto parts = b.edge_parts("G-S");
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(b.grid.components()[parts[0]].cls, ComponentClass::TransmissionTower);
  EXPECT_EQ(b.grid.components()[parts[1]].cls, ComponentClass::TransmissionLine);
}

TEST(GridIo, JsonRoundTrip) {
  auto region = default_region();
  Rng rng(3);
  auto grid = build_synthetic_grid(region.tracts, GridCounts{}, rng);
  testing::TempDir dir;
  save_grid(grid, dir.path() / "g.json");
  auto back = load_grid(dir.path() / "g.json");
  EXPECT_EQ(grid_to_json(back), grid_to_json(grid));
  EXPECT_EQ(back.substation_count(), grid.substation_count());
  EXPECT_EQ(back.poles(), grid.poles());
}

}  // namespace
}  // namespace gridshock
