#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gridshock/diffusion.hpp"
#include "gridshock/error.hpp"
#include "gridshock/region.hpp"

namespace gridshock {
namespace {

const CoefficientSet kCoeffs = CoefficientSet::defaults();

std::vector<Point> line_points(std::size_t n, double spacing = 0.1) {
  std::vector<Point> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = {i * spacing, 0.0};
  return p;
}

SocialNetwork make_net(NetworkKind kind, std::size_t n, std::uint64_t seed, double k = 6, std::uint32_t m = 3,
                       double radius = 0.3, double rewire = 0.1) {
  NetworkParams p;
  p.kind = kind;
  p.mean_degree = k;
  p.attachment_m = m;
  p.radius_km = radius;
  p.rewire_p = rewire;
  Rng rng(seed);
  return build_social_network(p, line_points(n), rng);
}

void expect_simple(const SocialNetwork& net) {
  std::size_t stubs = 0;
  for (std::uint32_t v = 0; v < net.size(); ++v) {
    const auto nb = net.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
    for (auto u : nb) {
      EXPECT_NE(u, v);
      const auto back = net.neighbors(u);
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), v));
    }
    stubs += nb.size();
  }
  EXPECT_EQ(stubs, 2 * net.edge_count());
}

TEST(NetworkKind, ParseNames) {
  EXPECT_EQ(parse_network_kind("scale_free"), NetworkKind::ScaleFree);
  EXPECT_EQ(parse_network_kind("small_world"), NetworkKind::SmallWorld);
  EXPECT_EQ(to_string(NetworkKind::Distance), "distance");
  EXPECT_THROW(parse_network_kind("lattice"), Error);
}

TEST(Network, UnrewiredSmallWorldIsRegular) {
  auto net = make_net(NetworkKind::SmallWorld, 1000, 1, 6, 3, 0.3, 0.0);
  for (std::uint32_t v = 0; v < net.size(); ++v) EXPECT_EQ(net.degree(v), 6u);
  EXPECT_EQ(net.edge_count(), 3000u);
}

TEST(Network, RewiringKeepsEdgeCount) {
  auto net = make_net(NetworkKind::SmallWorld, 500, 2, 6, 3, 0.3, 0.3);
  EXPECT_EQ(net.edge_count(), 1500u);
  expect_simple(net);
}

TEST(Network, ScaleFreeEdgeCountAndHubs) {
  auto net = make_net(NetworkKind::ScaleFree, 1000, 3);
  EXPECT_EQ(net.edge_count(), 3u * (1000 - 3) + 3u);
  std::size_t max_degree = 0;
  for (std::uint32_t v = 0; v < net.size(); ++v) max_degree = std::max(max_degree, net.degree(v));
  const double mean = 2.0 * net.edge_count() / net.size();
  EXPECT_GT(max_degree, 5 * mean);
  for (std::uint32_t v = 0; v < net.size(); ++v) EXPECT_GE(net.degree(v), 3u);
  expect_simple(net);
}

TEST(Network, RandomMeanDegree) {
  auto net = make_net(NetworkKind::Random, 2000, 4);
  EXPECT_NEAR(2.0 * net.edge_count() / net.size(), 6.0, 0.3);
  expect_simple(net);
}

TEST(Network, DistanceZeroRadiusIsEmpty) {
  EXPECT_EQ(make_net(NetworkKind::Distance, 50, 5, 6, 3, 0.0).edge_count(), 0u);
}

TEST(Network, DistanceLinksWithinRadius) {
  // Points 0.1 km apart with radius 0.25: each links to two on each side.
  auto net = make_net(NetworkKind::Distance, 20, 5, 6, 3, 0.25);
  EXPECT_EQ(net.degree(10), 4u);
  EXPECT_EQ(net.degree(0), 2u);
  expect_simple(net);
}

TEST(Network, DegenerateSizesRejected) {
  EXPECT_THROW(make_net(NetworkKind::SmallWorld, 6, 1, 6), Error);
  EXPECT_THROW(make_net(NetworkKind::ScaleFree, 3, 1, 6, 3), Error);
}

TEST(Network, SeededBuildIsReproducible) {
  for (auto kind : {NetworkKind::Random, NetworkKind::SmallWorld, NetworkKind::ScaleFree}) {
    EXPECT_EQ(make_net(kind, 300, 9).edges(), make_net(kind, 300, 9).edges());
  }
}

SocialNetwork star(std::uint32_t leaves) {
  std::vector<std::vector<std::uint32_t>> adj(leaves + 1);
  for (std::uint32_t l = 1; l <= leaves; ++l) {
    adj[0].push_back(l);
    adj[l].push_back(0);
  }
  return SocialNetwork(NetworkKind::Random, std::move(adj));
}

TEST(Information, OfficialCertaintyInformsEveryoneOnDayZero) {
  auto net = make_net(NetworkKind::Random, 200, 1);
  BehaviorState s(200);
  Rng rng(1);
  step_information(0, s, net, InfoParams{1.0, 0.0, 0.0}, rng);
  EXPECT_EQ(s.informed_count(), 200u);
  for (int d : s.inform_day) EXPECT_EQ(d, 0);
}

TEST(Information, NoChannelsNoGrowth) {
  auto net = make_net(NetworkKind::ScaleFree, 200, 1);
  BehaviorState s(200);
  s.informed[3] = 1;
  s.inform_day[3] = 0;
  Rng rng(1);
  for (int day = 0; day < 10; ++day) step_information(day, s, net, InfoParams{0.0, 0.0, 0.0}, rng);
  EXPECT_EQ(s.informed_count(), 1u);
}

TEST(Information, PreparedHubSharesWithGivenProbability) {
  const std::uint32_t leaves = 100;
  auto net = star(leaves);
  Rng rng(8);
  std::size_t heard = 0, total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BehaviorState s(leaves + 1);
    s.informed[0] = s.prepared[0] = 1;
    step_information(0, s, net, InfoParams{0.0, 0.5, 0.1}, rng);
    heard += s.informed_count() - 1;
    total += leaves;
  }
  EXPECT_NEAR(static_cast<double>(heard) / total, 0.5, 0.015);
}

TEST(Information, UnpreparedHubSharesLess) {
  const std::uint32_t leaves = 100;
  auto net = star(leaves);
  Rng rng(8);
  std::size_t heard = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BehaviorState s(leaves + 1);
    s.informed[0] = 1;
    step_information(0, s, net, InfoParams{0.0, 0.5, 0.1}, rng);
    heard += s.informed_count() - 1;
  }
  EXPECT_NEAR(heard / 10000.0, 0.1, 0.01);
}

TEST(Information, ProbabilityOutsideUnitRejected) {
  EXPECT_THROW((InfoParams{1.5, 0.1, 0.1}).validate(), Error);
}

Population uniform_population(std::size_t n, std::uint64_t seed) {
  std::vector<Tract> t{testing::make_tract("A", 0, 0, 10, 0.5, 0.2)};
  Rng rng(seed);
  return synthesize_households(t, std::vector{testing::flat_marginals("A")}, n, kCoeffs, rng);
}

TEST(Adoption, PeerTermShiftsLogOddsByLambda) {
  Household h;
  const double none = preparedness_logit(kCoeffs, h, 9, 2.0, 0.0);
  const double all = preparedness_logit(kCoeffs, h, 9, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(all - none, 2.0);
}

TEST(Adoption, IsolatedNodeHasZeroShare) {
  SocialNetwork net(NetworkKind::Random, std::vector<std::vector<std::uint32_t>>(3));
  BehaviorState s(3);
  s.prepared = {1, 1, 1};
  EXPECT_EQ(prepared_neighbor_share(net, s, 1), 0.0);
}

TEST(Adoption, DailyHazardCompoundsToModelProbability) {
  // Everyone informed on day 0, no peers: P(prepared by day f) = sigmoid(x'b).
  const std::size_t n = 20000;
  auto pop = uniform_population(n, 3);
  SocialNetwork net(NetworkKind::Random, std::vector<std::vector<std::uint32_t>>(n));
  AdoptionParams ap;
  ap.lambda = 0.0;
  ap.forewarning_days = 9;
  Rng info(1), adopt(2);
  auto s = run_forewarning(net, pop, kCoeffs, InfoParams{1.0, 0, 0}, ap, info, adopt);
  double expected = 0.0;
  for (const auto& h : pop.households) expected += sigmoid(preparedness_logit(kCoeffs, h, 9, 0.0, 0.0));
  expected /= n;
  EXPECT_NEAR(static_cast<double>(s.prepared_count()) / n, expected, 0.01);
}

TEST(Adoption, OnlyInformedHouseholdsActOrBuyGenerators) {
  const std::size_t n = 500;
  auto pop = uniform_population(n, 4);
  Rng nr(4);
  auto net = build_social_network(NetworkParams{}, pop, nr);
  AdoptionParams ap;
  Rng info(5), adopt(6);
  auto s = run_forewarning(net, pop, kCoeffs, InfoParams{0.05, 0.05, 0.01}, ap, info, adopt);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!s.informed[v]) {
      EXPECT_EQ(s.prepared[v], 0);
      EXPECT_EQ(s.substitute[v], 0);
    } else if (s.prepared[v]) {
      EXPECT_GE(s.prepare_day[v], s.inform_day[v]);
    }
  }
}

TEST(Adoption, NoForewarningNoAction) {
  auto pop = uniform_population(100, 5);
  SocialNetwork net(NetworkKind::Random, std::vector<std::vector<std::uint32_t>>(100));
  AdoptionParams ap;
  ap.forewarning_days = 0;
  Rng info(1), adopt(2);
  auto s = run_forewarning(net, pop, kCoeffs, InfoParams{}, ap, info, adopt);
  EXPECT_EQ(s.informed_count(), 0u);
  EXPECT_EQ(s.prepared_count(), 0u);
}

// Raising lambda with the same streams never removes an adopter or an
// informed household, in either preparedness mode.
TEST(AdoptionProperty, LambdaDominatesPathwise) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 400;
    auto pop = uniform_population(n, seed);
    Rng nr(seed);
    NetworkParams np;
    np.kind = static_cast<NetworkKind>(seed % 3);
    auto net = build_social_network(np, pop, nr);
    for (auto mode : {PreparednessMode::Binary, PreparednessMode::Ordinal}) {
      std::vector<BehaviorState> runs;
      for (double lambda : {0.0, 0.5, 2.0}) {
        AdoptionParams ap;
        ap.lambda = lambda;
        ap.mode = mode;
        Rng info(seed, Stream::Diffusion), adopt(seed, Stream::Adoption);
        runs.push_back(run_forewarning(net, pop, kCoeffs, InfoParams{0.2, 0.3, 0.1}, ap, info, adopt));
      }
      for (std::size_t k = 1; k < runs.size(); ++k) {
        for (std::uint32_t v = 0; v < n; ++v) {
          EXPECT_GE(runs[k].prepared[v], runs[k - 1].prepared[v]);
          EXPECT_GE(runs[k].informed[v], runs[k - 1].informed[v]);
        }
      }
    }
  }
}

TEST(AdoptionProperty, InformationMonotoneInOfficialProbability) {
  const std::size_t n = 300;
  auto pop = uniform_population(n, 12);
  Rng nr(12);
  auto net = build_social_network(NetworkParams{}, pop, nr);
  std::size_t prev = 0;
  for (double po : {0.0, 0.05, 0.2, 0.5, 1.0}) {
    AdoptionParams ap;
    Rng info(1), adopt(2);
    auto s = run_forewarning(net, pop, kCoeffs, InfoParams{po, 0.3, 0.1}, ap, info, adopt);
    EXPECT_GE(s.informed_count(), prev);
    prev = s.informed_count();
  }
  EXPECT_EQ(prev, n);
}

TEST(AdoptionProperty, InformedSetOnlyGrows) {
  const std::size_t n = 300;
  auto pop = uniform_population(n, 13);
  Rng nr(13);
  auto net = build_social_network(NetworkParams{}, pop, nr);
  BehaviorState s(n);
  Rng info(1), adopt(2);
  AdoptionParams ap;
  std::size_t prev_informed = 0, prev_prepared = 0;
  for (int day = 0; day < ap.forewarning_days; ++day) {
    step_information(day, s, net, InfoParams{0.1, 0.3, 0.1}, info);
    step_adoption(day, s, net, pop, kCoeffs, ap, adopt);
    EXPECT_GE(s.informed_count(), prev_informed);
    EXPECT_GE(s.prepared_count(), prev_prepared);
    prev_informed = s.informed_count();
    prev_prepared = s.prepared_count();
  }
}

TEST(Ordinal, LevelsStayInRangeAndActingFlagFollowsLevel) {
  const std::size_t n = 300;
  auto pop = uniform_population(n, 14);
  Rng nr(14);
  auto net = build_social_network(NetworkParams{}, pop, nr);
  AdoptionParams ap;
  ap.mode = PreparednessMode::Ordinal;
  Rng info(1), adopt(2);
  auto s = run_forewarning(net, pop, kCoeffs, InfoParams{}, ap, info, adopt);
  for (std::uint32_t v = 0; v < n; ++v) {
    EXPECT_GE(s.prepare_level[v], 1);
    EXPECT_LE(s.prepare_level[v], 5);
    EXPECT_EQ(s.prepared[v], s.prepare_level[v] >= ap.acting_level ? 1 : 0);
    EXPECT_EQ(s.preparedness_value(v, PreparednessMode::Ordinal), s.prepare_level[v]);
  }
}

}  // namespace
}  // namespace gridshock
