#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gridshock/coefficients.hpp"
#include "gridshock/damage.hpp"
#include "gridshock/diffusion.hpp"
#include "gridshock/fragility.hpp"
#include "gridshock/grid.hpp"
#include "gridshock/hazard.hpp"
#include "gridshock/region.hpp"
#include "gridshock/restoration.hpp"

namespace gridshock {

struct GridSpec {
  /// Prebuilt grid JSON; otherwise one is synthesized from `counts`.
  std::optional<std::filesystem::path> file;
  GridCounts counts;
  std::uint64_t seed = 7;
};

struct PopulationSpec {
  /// Tract and marginal CSVs; both or neither. Without them the default
  /// synthetic region is used.
  std::optional<std::filesystem::path> tracts_file;
  std::optional<std::filesystem::path> marginals_file;
  RegionParams region;
  std::size_t n_households = 2500;
};

enum class Statistic { PeakHardship, HardshipDays };

std::string_view to_string(Statistic s) noexcept;
Statistic parse_statistic(std::string_view name);

struct MonteCarloParams {
  double confidence = 0.95;
  double rel_err = 0.05;
  std::size_t min_rep = 10;
  std::size_t max_rep = 1000;
  Statistic statistic = Statistic::PeakHardship;

  void validate() const;
};

struct Scenario {
  std::string name = "baseline";
  HurricaneSpec hurricane;
  std::optional<std::filesystem::path> wind_file;
  int forewarning_days = 9;
  Strategy strategy = Strategy::Component;
  ResourceProfile resources;
  NetworkParams network;
  InfoParams info;
  /// `forewarning_days` above overrides adoption.forewarning_days.
  AdoptionParams adoption;
  CoefficientSet coefficients = CoefficientSet::defaults();
  GridSpec grid;
  PopulationSpec population;
  FragilityParams fragility;
  DamageMode damage_mode = DamageMode::PeakWind;
  RepairTable repairs;
  /// Sigma of multiplicative lognormal noise on tolerance; 0 keeps the mean.
  double tolerance_noise_sigma = 0.0;
  /// Replaces every household's tolerance (days); may be +inf.
  std::optional<double> tolerance_override_days;
  std::uint64_t seed = 1;
  MonteCarloParams monte_carlo;

  void validate() const;
};

/// Every key is optional; absent keys keep the defaults. Unknown keys throw
/// InvalidParameter. Relative paths resolve against `base_dir`.
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {},
                            Scenario base = Scenario{});
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

/// Identifies the population a scenario samples: equal keys mean equal
/// households for equal replication seeds.
std::string population_key(const Scenario& s);

}  // namespace gridshock
