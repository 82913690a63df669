#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gridshock/coefficients.hpp"
#include "gridshock/grid.hpp"
#include "gridshock/hazard.hpp"
#include "gridshock/random.hpp"

namespace gridshock {

/// Per-tract attribute shares. Binary attributes are P(attribute = 1).
struct TractMarginals {
  std::string tract_id;
  std::array<double, 7> income{};
  double racial_minority = 0.0;
  double elderly = 0.0;
  double child_under_10 = 0.0;
  double mobility_issue = 0.0;
  double medical_condition = 0.0;
  double chronic_disease = 0.0;
  double owner = 0.0;
  double vehicle_missing = 0.0;
  double social_capital = 0.0;

  /// Throws OutOfRange for a share outside [0,1] or incomes not summing to 1.
  void validate() const;
};

/// CSV `tract_id,income_1..income_7,racial_minority,elderly,child_under_10,
/// mobility_issue,medical_condition,chronic_disease,owner,vehicle_missing,social_capital`.
std::vector<TractMarginals> load_marginals(const std::filesystem::path& path);
void write_marginals(std::span<const TractMarginals> marginals, const std::filesystem::path& path);

struct Household {
  std::uint32_t id = 0;
  std::uint32_t tract = 0;  // index into the tract list used for synthesis
  NodeId pole = kNone;
  Point pos;
  int income = 1;  // bracket 1..7
  int racial_minority = 0;
  int elderly = 0;
  int child_under_10 = 0;
  int mobility_issue = 0;
  int medical_condition = 0;
  int chronic_disease = 0;
  int owner = 0;
  int vehicle_missing = 0;
  int social_capital = 0;
  int flood_zone = 0;
  double state_duration_years = 0.0;
  double supermarket_distance_mi = 0.0;
  // Traits fixed at synthesis.
  int need = 1;           // 1..5
  int self_efficacy = 1;  // 1..5
  int experience = 0;

  int renter() const { return 1 - owner; }
};

struct Population {
  std::vector<std::string> tract_ids;
  std::vector<Household> households;

  std::size_t size() const { return households.size(); }
  /// FNV-1a over every sampled field; equal populations have equal prints.
  std::uint64_t fingerprint() const;
};

/// Households per tract proportional to population (largest remainder).
std::vector<std::size_t> allocate_households(std::span<const Tract> tracts, std::size_t n_total);

/// Samples `n_total` households. With a grid, each household is attached to
/// a uniformly chosen pole of its tract and placed near it; without one it is
/// placed near the tract centroid and has no pole.
Population synthesize_households(std::span<const Tract> tracts, std::span<const TractMarginals> marginals,
                                 std::size_t n_total, const CoefficientSet& coeffs, Rng& rng,
                                 const Grid* grid = nullptr);

// Covariate vectors in the term order of the default coefficient set.
std::vector<double> need_covariates(const Household& h);
std::vector<double> self_efficacy_covariates(const Household& h);
std::vector<double> experience_covariates(const Household& h);
std::vector<double> substitute_covariates(const Household& h, double expectation_days);
std::vector<double> preparedness_covariates(const Household& h, double forewarning_days);

/// Poisson mean of the expected outage in days. x_o is home ownership.
double expected_outage(const CoefficientSet& coeffs, double forewarning_days, int informed, int owner, int elderly,
                       int mobility_issue, int flood_zone);
double expected_outage(const CoefficientSet& coeffs, const Household& h, double forewarning_days, int informed);

/// Mean tolerance in days; `prepared` is 0/1 or a 1..5 level.
double tolerance_days(const CoefficientSet& coeffs, int substitute, int need, double prepared);

}  // namespace gridshock
