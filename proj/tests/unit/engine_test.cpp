#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gridshock/engine.hpp"
#include "gridshock/error.hpp"

namespace gridshock {
namespace {

HouseholdRecord hardship_record(double start_h, double end_h, double tolerance_days) {
  HouseholdRecord h;
  h.outage_start_h = start_h;
  h.outage_end_h = end_h;
  h.tolerance_days = tolerance_days;
  h.flags = static_cast<std::uint16_t>(HouseholdFlag::Outage);
  if (end_h - start_h > 24.0 * tolerance_days) h.flags |= static_cast<std::uint16_t>(HouseholdFlag::Hardship);
  return h;
}

TEST(HardshipSeries, SingleDayForEveryone) {
  // Tolerance ends at hour 72; power back at hour 90.
  std::vector<HouseholdRecord> hs(3, hardship_record(24.0, 90.0, 2.0));
  EXPECT_EQ(hardship_series(hs, 6), (std::vector<double>{0, 0, 0, 1, 0, 0}));
}

TEST(HardshipSeries, QuarterOfFourOverSeveralDays) {
  std::vector<HouseholdRecord> hs(4);
  hs[0] = hardship_record(0.0, 24.0 * 5 + 12, 2.0);
  EXPECT_EQ(hardship_series(hs, 8), (std::vector<double>{0, 0, 0.25, 0.25, 0.25, 0.25, 0, 0}));
}

TEST(HardshipSeries, EmptyPopulationRejected) {
  try {
    hardship_series(std::vector<HouseholdRecord>{}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyPopulation);
  }
}

TEST(HardshipSeries, OutageWithinToleranceNeverCounts) {
  auto h = hardship_record(10.0, 10.0 + 48.0, 2.0);
  EXPECT_FALSE(h.has(HouseholdFlag::Hardship));
  for (int d = 0; d < 5; ++d) EXPECT_FALSE(in_hardship_on_day(h, d));
}

TEST(HardshipSeries, DayBoundariesAreHalfOpen) {
  auto h = hardship_record(0.0, 72.0, 1.0);  // hardship over [24, 72)
  EXPECT_FALSE(in_hardship_on_day(h, 0));
  EXPECT_TRUE(in_hardship_on_day(h, 1));
  EXPECT_TRUE(in_hardship_on_day(h, 2));
  EXPECT_FALSE(in_hardship_on_day(h, 3));
}

TEST(Flags, NamesRoundTrip) {
  const auto names = household_flag_names();
  ASSERT_EQ(names.size(), 16u);
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(static_cast<std::uint16_t>(flag_by_name(names[i])), 1u << i);
  }
  EXPECT_EQ(flag_by_name("racial_minority"), HouseholdFlag::RacialMinority);
  EXPECT_THROW(flag_by_name("left_handed"), Error);
}

class Engine : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    scenario_ = new Scenario(testing::small_scenario());
    world_ = new World(build_world(*scenario_));
  }
  static void TearDownTestSuite() {
    delete world_;
    delete scenario_;
  }
  static Scenario* scenario_;
  static World* world_;
};
Scenario* Engine::scenario_ = nullptr;
World* Engine::world_ = nullptr;

void expect_same(const RunResult& a, const RunResult& b) {
  EXPECT_EQ(a.daily_hardship, b.daily_hardship);
  EXPECT_EQ(a.failed_by_class, b.failed_by_class);
  EXPECT_EQ(a.full_restoration_day, b.full_restoration_day);
  EXPECT_EQ(a.population_fingerprint, b.population_fingerprint);
  EXPECT_EQ(a.prepared_fraction, b.prepared_fraction);
  ASSERT_EQ(a.households.size(), b.households.size());
  for (std::size_t i = 0; i < a.households.size(); ++i) {
    EXPECT_EQ(a.households[i].flags, b.households[i].flags);
    EXPECT_EQ(a.households[i].outage_end_h, b.households[i].outage_end_h);
    EXPECT_EQ(a.households[i].tolerance_days, b.households[i].tolerance_days);
  }
  ASSERT_EQ(a.schedule.repairs.size(), b.schedule.repairs.size());
  for (std::size_t i = 0; i < a.schedule.repairs.size(); ++i) {
    EXPECT_EQ(a.schedule.repairs[i].component, b.schedule.repairs[i].component);
    EXPECT_EQ(a.schedule.repairs[i].end_h, b.schedule.repairs[i].end_h);
  }
}

TEST_F(Engine, SameSeedSameResult) { expect_same(run_replication(*scenario_, *world_, 42), run_replication(*scenario_, *world_, 42)); }

TEST_F(Engine, DifferentSeedsDiffer) {
  EXPECT_NE(run_replication(*scenario_, *world_, 1).population_fingerprint,
            run_replication(*scenario_, *world_, 2).population_fingerprint);
}

TEST_F(Engine, CalmStormDoesNothing) {
  auto s = *scenario_;
  s.hurricane.v_max_ms = {0, 0, 0, 0};
  auto r = run_replication(s, *world_, 3);
  EXPECT_EQ(r.failed_components(), 0u);
  EXPECT_EQ(r.peak_hardship(), 0.0);
  EXPECT_EQ(r.full_restoration_day, 0);
  for (const auto& h : r.households) EXPECT_FALSE(h.has(HouseholdFlag::Outage));
}

TEST_F(Engine, InfiniteToleranceMeansNoHardship) {
  auto s = *scenario_;
  s.tolerance_override_days = std::numeric_limits<double>::infinity();
  auto r = run_replication(s, *world_, 4);
  EXPECT_GT(r.failed_components(), 0u);
  for (double v : r.daily_hardship) EXPECT_EQ(v, 0.0);
}

TEST_F(Engine, ZeroToleranceMeansEveryOutageIsHardship) {
  auto s = *scenario_;
  s.tolerance_override_days = 0.0;
  auto r = run_replication(s, *world_, 4);
  for (const auto& h : r.households) EXPECT_EQ(h.has(HouseholdFlag::Hardship), h.has(HouseholdFlag::Outage));
}

TEST_F(Engine, TimelineOffsetsByForewarning) {
  auto r = run_replication(*scenario_, *world_, 5);
  EXPECT_EQ(r.hurricane_start_h, 24.0 * scenario_->forewarning_days);
  EXPECT_EQ(r.schedule.restoration_start_h, r.hurricane_end_h);
  for (const auto& h : r.households) {
    if (!h.has(HouseholdFlag::Outage)) continue;
    EXPECT_GE(h.outage_start_h, r.hurricane_start_h);
    EXPECT_LT(h.outage_start_h, r.hurricane_end_h);
    EXPECT_GT(h.outage_end_h, r.hurricane_end_h);
  }
  const auto landfall_day = static_cast<std::size_t>(r.hurricane_start_h / 24.0);
  for (std::size_t d = 0; d < landfall_day && d < r.daily_hardship.size(); ++d) EXPECT_EQ(r.daily_hardship[d], 0.0);
}

TEST_F(Engine, RestorationDayCoversMakespan) {
  auto r = run_replication(*scenario_, *world_, 6);
  ASSERT_FALSE(r.schedule.repairs.empty());
  EXPECT_GE(24.0 * r.full_restoration_day, r.schedule.makespan_end_h() - 1e-9);
  EXPECT_LT(24.0 * (r.full_restoration_day - 1), r.schedule.makespan_end_h());
  EXPECT_EQ(r.daily_hardship.size(), static_cast<std::size_t>(r.full_restoration_day) + 1);
}

// Invariants of the hardship outcome over many seeds.
TEST_F(Engine, HardshipInvariants) {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    auto r = run_replication(*scenario_, *world_, seed);
    std::size_t outages = 0;
    for (const auto& h : r.households) {
      outages += h.has(HouseholdFlag::Outage);
      const bool expected = h.has(HouseholdFlag::Outage) &&
                            (h.outage_end_h - h.outage_start_h) > 24.0 * h.tolerance_days;
      EXPECT_EQ(h.has(HouseholdFlag::Hardship), expected);
      EXPECT_GT(h.tolerance_days, 0.0);
      if (h.has(HouseholdFlag::Prepared) || h.has(HouseholdFlag::Substitute)) {
        EXPECT_TRUE(h.has(HouseholdFlag::Informed));
      }
    }
    const double outage_share = static_cast<double>(outages) / r.households.size();
    for (double v : r.daily_hardship) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, outage_share + 1e-12);
    }
    EXPECT_EQ(r.daily_hardship, hardship_series(r));
    EXPECT_EQ(r.daily_hardship.back(), 0.0);
  }
}

TEST_F(Engine, LongerToleranceNeverAddsHardship) {
  auto s = *scenario_;
  s.tolerance_noise_sigma = 0.0;
  auto base = run_replication(s, *world_, 8);
  s.tolerance_override_days = 30.0;
  auto relaxed = run_replication(s, *world_, 8);
  s.tolerance_override_days = 1.0;
  auto strict = run_replication(s, *world_, 8);
  EXPECT_LE(relaxed.hardship_days(), strict.hardship_days());
  for (std::size_t i = 0; i < base.households.size(); ++i) {
    if (relaxed.households[i].has(HouseholdFlag::Hardship)) {
      EXPECT_TRUE(strict.households[i].has(HouseholdFlag::Hardship));
    }
  }
}

TEST_F(Engine, WorldGridMatchesRequestedCounts) {
  EXPECT_EQ(world_->grid.substation_count(), scenario_->grid.counts.n_substations);
  EXPECT_EQ(world_->grid.transmission_count(), scenario_->grid.counts.n_transmission);
  EXPECT_FALSE(world_->hurricane.track.empty());
}

}  // namespace
}  // namespace gridshock
