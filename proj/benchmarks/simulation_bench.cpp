#include <benchmark/benchmark.h>

#include "gridshock/damage.hpp"
#include "gridshock/diffusion.hpp"
#include "gridshock/engine.hpp"
#include "gridshock/restoration.hpp"

namespace gs = gridshock;

namespace {

struct Fixture {
  gs::Scenario scenario;
  gs::World world = gs::build_world(scenario);
  gs::WindField wind = [this] {
    gs::Rng rng(1, gs::Stream::Hazard);
    return gs::parametric_wind_series(world.hurricane, world.tracts, rng);
  }();
  gs::DamageState damage = [this] {
    gs::Rng rng(1, gs::Stream::Damage);
    return gs::sample_damage(world.grid, wind, scenario.fragility, scenario.damage_mode, rng);
  }();
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_Replication(benchmark::State& state) {
  const auto& f = fixture();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gs::run_replication(f.scenario, f.world, ++seed));
}
BENCHMARK(BM_Replication)->Unit(benchmark::kMillisecond);

void BM_SampleDamage(benchmark::State& state) {
  const auto& f = fixture();
  gs::Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs::sample_damage(f.world.grid, f.wind, f.scenario.fragility, f.scenario.damage_mode, rng));
  }
}
BENCHMARK(BM_SampleDamage)->Unit(benchmark::kMicrosecond);

void BM_PropagateConnectivity(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(gs::propagate_connectivity(f.world.grid, f.damage));
}
BENCHMARK(BM_PropagateConnectivity)->Unit(benchmark::kMicrosecond);

void BM_ScheduleRepairs(benchmark::State& state) {
  const auto& f = fixture();
  gs::Rng pr(3);
  const auto prio = gs::plan_priorities(static_cast<gs::Strategy>(state.range(0)), f.world.grid, f.damage,
                                        f.world.tracts, pr);
  gs::Rng r(4);
  const auto tasks = gs::make_repair_tasks(f.world.grid, f.damage, gs::RepairTable{}, r);
  for (auto _ : state) benchmark::DoNotOptimize(gs::schedule_repairs(tasks, prio, f.scenario.resources, 48.0));
}
BENCHMARK(BM_ScheduleRepairs)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_PlanPriorities(benchmark::State& state) {
  const auto& f = fixture();
  gs::Rng pr(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs::plan_priorities(static_cast<gs::Strategy>(state.range(0)), f.world.grid, f.damage,
                                                 f.world.tracts, pr));
  }
}
BENCHMARK(BM_PlanPriorities)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_BuildNetwork(benchmark::State& state) {
  std::vector<gs::Point> pos(static_cast<std::size_t>(state.range(1)));
  gs::Rng g(6);
  for (auto& p : pos) p = gs::Point{g.uniform(0.0, 60.0), g.uniform(0.0, 40.0)};
  gs::NetworkParams params;
  params.kind = static_cast<gs::NetworkKind>(state.range(0));
  gs::Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(gs::build_social_network(params, pos, rng));
}
BENCHMARK(BM_BuildNetwork)->ArgsProduct({{0, 1, 2, 3}, {2500}})->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
