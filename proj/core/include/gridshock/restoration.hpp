#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "gridshock/damage.hpp"
#include "gridshock/grid.hpp"
#include "gridshock/hazard.hpp"
#include "gridshock/random.hpp"

namespace gridshock {

/// Repair teams available: `initial_teams` plus linear growth that stops
/// after `growth_horizon_h`.
struct ResourceProfile {
  double initial_teams = 800.0;
  double growth_per_hour = 15.0;
  double growth_horizon_h = 168.0;

  void validate() const;
  double cap() const { return initial_teams + growth_per_hour * growth_horizon_h; }
};

double resource_level(double t_h, const ResourceProfile& profile);

enum class Strategy { Component, Population, Svi };

std::string_view to_string(Strategy s) noexcept;
/// Throws UnknownStrategy.
Strategy parse_strategy(std::string_view name);

struct RepairClass {
  double mean_h;
  double sd_h;
  int teams;
};

/// Repair durations ~ N(mean, sd) and team requirements per class and tier.
struct RepairTable {
  std::array<RepairClass, 3> substation{RepairClass{72.0, 36.0, 6}, RepairClass{168.0, 84.0, 14},
                                        RepairClass{720.0, 360.0, 60}};
  RepairClass tower{72.0, 36.0, 6};
  RepairClass line{48.0, 24.0, 4};
  RepairClass pole{10.0, 5.0, 1};
  RepairClass conductor{8.0, 4.0, 1};
  double min_duration_h = 0.5;

  const RepairClass& lookup(ComponentClass cls, DamageTier tier) const;
  void validate() const;
};

struct RepairTask {
  ComponentId component = kNone;
  ComponentClass cls = ComponentClass::Pole;
  double duration_h = 0.0;
  int teams = 0;
};

/// Ordered repair list for the damaged components.
///
/// component: substations by tier severity (complete first), then
///   transmission, then poles and conductors in a seeded random order.
/// population / svi: backbone first. Tracts are ranked by descending
///   population (or SVI), ties to the lower tract id. For each tract in turn,
///   the damaged backbone on the cheapest generator path to every substation
///   feeding it is queued, cost being the number of damaged components not yet
///   queued. Remaining backbone follows in component order, then distribution
///   tract by tract in chain order.
std::vector<ComponentId> plan_priorities(Strategy strategy, const Grid& grid, const DamageState& damage,
                                         std::span<const Tract> tracts, Rng& rng);

/// Durations are drawn once per damaged component in component-id order so
/// that the strategy does not change which duration a component receives.
std::vector<RepairTask> make_repair_tasks(const Grid& grid, const DamageState& damage, const RepairTable& table,
                                          Rng& rng);

struct ScheduledRepair {
  ComponentId component = kNone;
  ComponentClass cls = ComponentClass::Pole;
  double start_h = 0.0;
  double end_h = 0.0;
  /// Start of the first hour in which the teams are free again.
  double release_h = 0.0;
  int teams = 0;
  std::size_t priority = 0;
};

struct RepairSchedule {
  double restoration_start_h = 0.0;
  /// In priority order.
  std::vector<ScheduledRepair> repairs;

  double makespan_end_h() const;
  /// Teams held at absolute time t: repairs with start <= t < release.
  int teams_in_use(double t_h) const;
};

/// Greedy hourly list scheduler. Each hour, finished repairs release their
/// teams and the priority list is scanned once: a task starts whenever the
/// free teams cover its requirement. Teams stay occupied until the hour in
/// which the repair ends.
RepairSchedule schedule_repairs(std::span<const RepairTask> tasks, std::span<const ComponentId> priorities,
                                const ResourceProfile& profile, double restoration_start_h);

/// Convenience overload: samples durations from `rng` then schedules.
RepairSchedule schedule_repairs(const Grid& grid, const DamageState& damage, std::span<const ComponentId> priorities,
                                const RepairTable& table, const ResourceProfile& profile, double restoration_start_h,
                                Rng& rng);

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// Per-node outage: `start_h` when the node first lost power, `end_h` when
/// it is energized again. Unaffected nodes have affected == false.
struct Outage {
  bool affected = false;
  double start_h = 0.0;
  double end_h = 0.0;
};

/// Replays failures in time order and repairs in completion order,
/// re-running the connectivity search after each distinct event time.
std::vector<Outage> compute_outages(const Grid& grid, const DamageState& damage, const RepairSchedule& schedule);

/// CSV `component_id,class,start_h,end_h,teams`.
void write_schedule_csv(const RepairSchedule& schedule, const std::filesystem::path& path);

}  // namespace gridshock
