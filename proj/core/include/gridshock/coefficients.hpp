#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gridshock {

/// Intercept plus named slope terms, evaluated in term order.
struct LinearModel {
  double intercept = 0.0;
  std::vector<std::string> terms;
  std::vector<double> coefficients;

  /// Throws ArityMismatch when x.size() != coefficients.size().
  double predictor(std::span<const double> x) const;
  double coefficient(const std::string& term) const;
};

/// Proportional-odds model: logit P(Y <= j) = alpha_j + beta'x, j = 1..4.
struct OrdinalModel {
  std::array<double, 4> intercepts{};
  std::vector<std::string> terms;
  std::vector<double> coefficients;

  double predictor(std::span<const double> x) const;
  /// Throws NonIncreasingIntercepts.
  void validate() const;
};

struct CoefficientSet {
  /// Poisson log-mean of the expected outage in days.
  /// Terms: log1p_forewarning, informed, owner, elderly, mobility_issue, flood_zone.
  LinearModel expectation;
  /// Log-mean tolerance in days. Terms: substitute, need, prepared.
  LinearModel tolerance;
  /// Generator purchase. Terms: income, renter, log1p_expectation, self_efficacy.
  LinearModel substitute;
  /// Terms: vehicle_missing, experience, elderly, renter, forewarning,
  /// supermarket_distance, self_efficacy.
  LinearModel preparedness;
  /// Terms: state_duration, racial_minority, elderly, child_under_10.
  LinearModel experience;
  /// Terms: racial_minority, mobility_issue, child_under_10, medical_condition.
  OrdinalModel need;
  /// Terms: owner, medical_condition, chronic_disease, social_capital.
  OrdinalModel self_efficacy;
  /// Five-level preparedness; same terms as `preparedness`. No empirical
  /// values: slopes default to the binary model's with the sign flipped so
  /// that a larger predictor means a higher level, and the intercepts put
  /// P(level >= 3) equal to the binary probability.
  OrdinalModel preparedness_levels;

  static CoefficientSet defaults();
  void validate() const;
};

double sigmoid(double z) noexcept;

/// sigmoid(intercept + beta'x).
double logistic_response(const LinearModel& model, std::span<const double> x);

/// P(Y = 1..5).
std::array<double, 5> ordinal_pmf(const OrdinalModel& model, std::span<const double> x);

/// Smallest j with u < P(Y <= j), else 5.
int ordinal_sample(const OrdinalModel& model, std::span<const double> x, double u);

/// Partial override: any model, intercept or named term present in `j`
/// replaces the default. Unknown names throw InvalidParameter.
CoefficientSet coefficients_from_json(const nlohmann::json& j, CoefficientSet base = CoefficientSet::defaults());
nlohmann::json coefficients_to_json(const CoefficientSet& set);
CoefficientSet load_coefficients(const std::filesystem::path& path);

}  // namespace gridshock
