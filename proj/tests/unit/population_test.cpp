#include <numeric>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gridshock/error.hpp"
#include "gridshock/population.hpp"
#include "gridshock/region.hpp"
#include "temp_dir.hpp"

namespace gridshock {
namespace {

const CoefficientSet kCoeffs = CoefficientSet::defaults();

TEST(Allocate, LargestRemainderSumsToTotal) {
  std::vector<Tract> t{testing::make_tract("A", 0, 0, 1, 0), testing::make_tract("B", 0, 0, 1, 0),
                       testing::make_tract("C", 0, 0, 1, 0)};
  const auto c = allocate_households(t, 10);
  EXPECT_EQ(c, (std::vector<std::size_t>{4, 3, 3}));
}

TEST(Allocate, ProportionalToPopulation) {
  std::vector<Tract> t{testing::make_tract("A", 0, 0, 300, 0), testing::make_tract("B", 0, 0, 100, 0)};
  EXPECT_EQ(allocate_households(t, 2500), (std::vector<std::size_t>{1875, 625}));
}

TEST(Allocate, ZeroPopulationRejected) {
  std::vector<Tract> t{testing::make_tract("A", 0, 0, 0, 0)};
  EXPECT_THROW(allocate_households(t, 5), Error);
}

TEST(Synthesize, DefaultRegionGivesRequestedCount) {
  auto region = default_region();
  Rng rng(1);
  auto pop = synthesize_households(region.tracts, region.marginals, 2500, kCoeffs, rng);
  EXPECT_EQ(pop.size(), 2500u);
  for (std::size_t i = 0; i < pop.size(); ++i) EXPECT_EQ(pop.households[i].id, i);
}

TEST(Synthesize, DegenerateMarginalIsCopied) {
  std::vector<Tract> t{testing::make_tract("A", 0, 0, 10, 0.5)};
  auto m = testing::flat_marginals("A");
  m.racial_minority = 1.0;
  m.owner = 0.0;
  Rng rng(2);
  auto pop = synthesize_households(t, std::vector{m}, 500, kCoeffs, rng);
  for (const auto& h : pop.households) {
    EXPECT_EQ(h.racial_minority, 1);
    EXPECT_EQ(h.renter(), 1);
  }
}

TEST(Synthesize, BinaryShareConcentrates) {
  std::vector<Tract> t{testing::make_tract("A", 0, 0, 10, 0.5)};
  auto m = testing::flat_marginals("A");
  m.racial_minority = 0.3;
  Rng rng(3);
  auto pop = synthesize_households(t, std::vector{m}, 100000, kCoeffs, rng);
  double s = 0;
  for (const auto& h : pop.households) s += h.racial_minority;
  EXPECT_NEAR(s / pop.size(), 0.30, 0.005);
}

TEST(Synthesize, TraitsWithinDomains) {
  auto region = default_region();
  Rng rng(4);
  auto pop = synthesize_households(region.tracts, region.marginals, 3000, kCoeffs, rng);
  for (const auto& h : pop.households) {
    EXPECT_GE(h.income, 1);
    EXPECT_LE(h.income, 7);
    EXPECT_GE(h.need, 1);
    EXPECT_LE(h.need, 5);
    EXPECT_GE(h.self_efficacy, 1);
    EXPECT_LE(h.self_efficacy, 5);
    EXPECT_GE(h.state_duration_years, 0.0);
    EXPECT_GE(h.supermarket_distance_mi, 0.0);
    EXPECT_TRUE(h.experience == 0 || h.experience == 1);
  }
}

TEST(Synthesize, HouseholdsAttachToPolesOfTheirTract) {
  auto region = default_region();
  Rng g(7);
  auto grid = build_synthetic_grid(region.tracts, GridCounts{}, g);
  Rng rng(5);
  auto pop = synthesize_households(region.tracts, region.marginals, 2500, kCoeffs, rng, &grid);
  for (const auto& h : pop.households) {
    ASSERT_NE(h.pole, kNone);
    EXPECT_EQ(grid.nodes()[h.pole].kind, NodeKind::Pole);
    EXPECT_EQ(grid.tract_ids()[grid.nodes()[h.pole].tract], pop.tract_ids[h.tract]);
  }
}

TEST(Synthesize, SameSeedSameFingerprint) {
  auto region = default_region();
  Rng a(9), b(9), c(10);
  const auto p1 = synthesize_households(region.tracts, region.marginals, 800, kCoeffs, a);
  const auto p2 = synthesize_households(region.tracts, region.marginals, 800, kCoeffs, b);
  const auto p3 = synthesize_households(region.tracts, region.marginals, 800, kCoeffs, c);
  EXPECT_EQ(p1.fingerprint(), p2.fingerprint());
  EXPECT_NE(p1.fingerprint(), p3.fingerprint());
}

TEST(Synthesize, MissingMarginalsRejected) {
  std::vector<Tract> t{testing::make_tract("A", 0, 0, 10, 0.5)};
  Rng rng(1);
  try {
    synthesize_households(t, std::vector{testing::flat_marginals("B")}, 5, kCoeffs, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownTract);
  }
}

TEST(Marginals, ShareOutsideUnitIntervalRejected) {
  auto m = testing::flat_marginals("A");
  m.elderly = 1.5;
  EXPECT_THROW(m.validate(), Error);
  auto n = testing::flat_marginals("A");
  n.income[0] += 0.1;
  EXPECT_THROW(n.validate(), Error);
}

TEST(Marginals, CsvRoundTrip) {
  auto region = default_region();
  testing::TempDir dir;
  write_marginals(region.marginals, dir.path() / "m.csv");
  const auto back = load_marginals(dir.path() / "m.csv");
  ASSERT_EQ(back.size(), region.marginals.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].tract_id, region.marginals[i].tract_id);
    EXPECT_EQ(back[i].income, region.marginals[i].income);
    EXPECT_EQ(back[i].social_capital, region.marginals[i].social_capital);
  }
  write_tracts(region.tracts, dir.path() / "t.csv");
  const auto tracts = load_tracts(dir.path() / "t.csv");
  ASSERT_EQ(tracts.size(), region.tracts.size());
  EXPECT_EQ(tracts[17].svi, region.tracts[17].svi);
  EXPECT_EQ(tracts[17].centroid.x_km, region.tracts[17].centroid.x_km);
}

TEST(Region, DefaultMatchesTargets) {
  auto r = default_region();
  EXPECT_EQ(r.tracts.size(), 100u);
  EXPECT_EQ(r.marginals.size(), 100u);
  std::uint32_t poles = 0;
  for (const auto& t : r.tracts) {
    poles += pole_count_for(t.population, 40.0);
    EXPECT_GE(t.svi, 0.0);
    EXPECT_LE(t.svi, 1.0);
  }
  EXPECT_EQ(poles, 1433u);
  EXPECT_EQ(r.tracts.front().id, "T001");
}

TEST(Covariates, TermOrderMatchesModels) {
  Household h;
  h.vehicle_missing = 1;
  h.experience = 1;
  h.supermarket_distance_mi = 2.5;
  h.self_efficacy = 4;
  const auto x = preparedness_covariates(h, 9.0);
  ASSERT_EQ(x.size(), kCoeffs.preparedness.terms.size());
  EXPECT_EQ(x[0], 1.0);
  EXPECT_EQ(x[1], 1.0);
  EXPECT_EQ(x[3], 1.0);  // renter
  EXPECT_EQ(x[4], 9.0);
  EXPECT_EQ(x[5], 2.5);
  EXPECT_EQ(x[6], 4.0);
  EXPECT_EQ(need_covariates(h).size(), kCoeffs.need.terms.size());
  EXPECT_EQ(self_efficacy_covariates(h).size(), kCoeffs.self_efficacy.terms.size());
  EXPECT_EQ(experience_covariates(h).size(), kCoeffs.experience.terms.size());
}

}  // namespace
}  // namespace gridshock
