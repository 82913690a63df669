#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gridshock/fragility.hpp"
#include "gridshock/grid.hpp"
#include "gridshock/hazard.hpp"

namespace gridshock {

enum class DamageTier : std::uint8_t { None, Moderate, Severe, Complete, Failed };

std::string_view to_string(DamageTier t) noexcept;

struct ComponentDamage {
  bool failed = false;
  DamageTier tier = DamageTier::None;
  /// Hour of failure in the wind field's clock.
  double fail_time_h = 0.0;
};

struct DamageState {
  std::vector<ComponentDamage> status;

  std::size_t failed_count() const;
  std::array<std::size_t, kComponentClassCount> failed_by_class(const Grid& grid) const;
  std::vector<std::uint8_t> failed_flags() const;
};

enum class DamageMode { PeakWind, PerHour };

/// Source of uniform [0,1) draws; overridable so tests can force outcomes.
using UniformSource = std::function<double()>;

/// Row of `field` for every grid tract; throws TractMismatch when missing.
std::vector<std::size_t> map_tracts(const Grid& grid, const WindField& field);

/// Failure probability of a component at wind `w`. For substations this is
/// the probability of at least moderate damage.
double failure_probability(const Grid& grid, ComponentId c, double w, const FragilityParams& params);

DamageState sample_damage(const Grid& grid, const WindField& field, const FragilityParams& params, DamageMode mode,
                          const UniformSource& uniform);
DamageState sample_damage(const Grid& grid, const WindField& field, const FragilityParams& params, DamageMode mode,
                          Rng& rng);

struct EnergizationState {
  std::vector<std::uint8_t> node_energized;
  std::vector<std::uint8_t> component_energized;

  bool energized(NodeId n) const { return node_energized[n] != 0; }

  friend bool operator==(const EnergizationState&, const EnergizationState&) = default;
};

/// Search from the generators over intact nodes and intact edges. An edge
/// is energized only when it is intact and both endpoints are energized, so
/// a failed substation de-energizes every incident transmission element.
EnergizationState propagate_connectivity(const Grid& grid, const DamageState& damage);
EnergizationState propagate_connectivity(const Grid& grid, std::span<const std::uint8_t> component_failed);

/// has_power per household: true iff the household's pole is energized.
std::vector<std::uint8_t> household_power(const EnergizationState& state, std::span<const NodeId> household_pole);

}  // namespace gridshock
