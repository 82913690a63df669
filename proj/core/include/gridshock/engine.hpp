#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "gridshock/population.hpp"
#include "gridshock/restoration.hpp"
#include "gridshock/scenario.hpp"

namespace gridshock {

/// Scenario inputs shared read-only by all replications: tracts, marginals,
/// the grid and, when loaded from a file, the wind field.
struct World {
  std::vector<Tract> tracts;
  std::vector<TractMarginals> marginals;
  Grid grid{std::vector<std::string>{}};
  /// Scenario hurricane with the default track filled in. Replications take
  /// intensity from their own scenario and borrow only this track.
  HurricaneSpec hurricane;
  std::optional<WindField> wind;
};

World build_world(const Scenario& scenario);

/// Household attribute and outcome bits kept per replication.
enum class HouseholdFlag : std::uint16_t {
  RacialMinority = 1u << 0,
  Elderly = 1u << 1,
  ChildUnder10 = 1u << 2,
  MobilityIssue = 1u << 3,
  MedicalCondition = 1u << 4,
  ChronicDisease = 1u << 5,
  Owner = 1u << 6,
  VehicleMissing = 1u << 7,
  SocialCapital = 1u << 8,
  FloodZone = 1u << 9,
  LowIncome = 1u << 10,  // income bracket 1 or 2
  Informed = 1u << 11,
  Prepared = 1u << 12,
  Substitute = 1u << 13,
  Outage = 1u << 14,
  Hardship = 1u << 15,
};

/// Names accepted by `flag_by_name`, in bit order.
std::span<const std::string_view> household_flag_names();
/// Throws InvalidParameter for an unknown name.
HouseholdFlag flag_by_name(std::string_view name);

struct HouseholdRecord {
  std::uint32_t tract = 0;
  std::uint16_t flags = 0;
  /// Hours since hazard identification; 0/0 without an outage.
  double outage_start_h = 0.0;
  double outage_end_h = 0.0;
  double tolerance_days = 0.0;

  bool has(HouseholdFlag f) const { return (flags & static_cast<std::uint16_t>(f)) != 0; }
};

struct RunResult {
  std::uint64_t seed = 0;
  double hurricane_start_h = 0.0;
  double hurricane_end_h = 0.0;
  /// Fraction of households in hardship per day since identification.
  std::vector<double> daily_hardship;
  std::vector<HouseholdRecord> households;
  std::array<std::size_t, kComponentClassCount> failed_by_class{};
  std::array<std::size_t, 3> substation_tiers{};  // moderate, severe, complete
  /// First day by whose end every repair is complete; 0 without damage.
  int full_restoration_day = 0;
  double informed_fraction = 0.0;
  double prepared_fraction = 0.0;
  double substitute_fraction = 0.0;
  std::uint64_t population_fingerprint = 0;
  RepairSchedule schedule;

  double peak_hardship() const;
  double hardship_days() const;
  std::size_t failed_components() const;
};

/// A household is in hardship on day d when [start + tolerance, end)
/// overlaps [24d, 24d + 24) hours, which happens only if the outage lasts
/// longer than its tolerance.
bool in_hardship_on_day(const HouseholdRecord& h, int day);

/// Throws EmptyPopulation.
std::vector<double> hardship_series(std::span<const HouseholdRecord> households, std::size_t n_days);
std::vector<double> hardship_series(const RunResult& result);

/// Deterministic in (scenario, world, seed).
RunResult run_replication(const Scenario& scenario, const World& world, std::uint64_t seed);
RunResult run_replication(const Scenario& scenario, std::uint64_t seed);

}  // namespace gridshock
