#pragma once

#include <array>
#include <cstdint>

namespace gridshock {

/// Standard normal CDF.
double normal_cdf(double z) noexcept;

/// Lognormal fragility in ln(m/s): P = Phi((ln w - mu) / sigma), 0 at w = 0.
double lognormal_fragility(double w, double mu, double sigma);

/// 1 - prod_k (1 - p) for n independent identical towers.
double independent_chain_failure(double p_single, std::uint32_t n);

struct LognormalCurve {
  double mu = 0.0;
  double sigma = 1.0;

  static LognormalCurve from_median(double median_ms, double sigma);
  double operator()(double w) const { return lognormal_fragility(w, mu, sigma); }
};

double transmission_element_fragility(double w, std::uint32_t n_towers, const LognormalCurve& tower);

/// 0.01 below w_critical, 1 at or above w_collapse, linear in between.
/// Returns 0 at w = 0 so a null hazard produces a null outcome.
double line_fragility(double w, double w_critical, double w_collapse);

/// min(1, a * w^b) with the empirical distribution-conductor coefficients
/// as defaults.
double conductor_fragility(double w, double a = 8e-12, double b = 5.1731);

enum class SubstationTier : std::uint8_t { Moderate = 0, Severe = 1, Complete = 2 };

/// Default curve parameters. Only the line thresholds and conductor law are
/// empirical values; the lognormal medians are calibration placeholders.
struct FragilityParams {
  std::array<LognormalCurve, 3> substation{LognormalCurve::from_median(45.0, 0.35),
                                           LognormalCurve::from_median(55.0, 0.35),
                                           LognormalCurve::from_median(130.0, 0.35)};
  LognormalCurve tower = LognormalCurve::from_median(55.0, 0.25);
  double line_critical_ms = 30.0;
  double line_collapse_ms = 60.0;
  double conductor_a = 8e-12;
  double conductor_b = 5.1731;
  LognormalCurve pole = LognormalCurve::from_median(48.0, 0.30);

  void validate() const;
};

}  // namespace gridshock
