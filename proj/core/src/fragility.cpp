#include "gridshock/fragility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gridshock/error.hpp"

namespace gridshock {

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double lognormal_fragility(double w, double mu, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidParameter, "lognormal sigma must be > 0");
  if (w < 0.0) throw Error(ErrorCode::InvalidParameter, "wind speed must be >= 0");
  if (w == 0.0) return 0.0;
  return normal_cdf((std::log(w) - mu) / sigma);
}

double independent_chain_failure(double p_single, std::uint32_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "tower count must be >= 1");
  if (p_single >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n) * std::log1p(-p_single));
}

LognormalCurve LognormalCurve::from_median(double median_ms, double sigma) {
  if (!(median_ms > 0.0)) throw Error(ErrorCode::InvalidParameter, "median must be > 0");
  return {std::log(median_ms), sigma};
}

double transmission_element_fragility(double w, std::uint32_t n_towers, const LognormalCurve& tower) {
  if (n_towers == 0) throw Error(ErrorCode::InvalidParameter, "n_towers must be >= 1");
  return independent_chain_failure(tower(w), n_towers);
}

double line_fragility(double w, double w_critical, double w_collapse) {
  if (!(w_critical < w_collapse)) {
    throw Error(ErrorCode::InvalidParameter, "line thresholds out of order: critical " + std::to_string(w_critical) +
                                                 " >= collapse " + std::to_string(w_collapse));
  }
  if (w <= 0.0) return 0.0;
  if (w < w_critical) return 0.01;
  if (w >= w_collapse) return 1.0;
  return 0.01 + (w - w_critical) / (w_collapse - w_critical) * 0.99;
}

double conductor_fragility(double w, double a, double b) {
  if (w < 0.0) throw Error(ErrorCode::InvalidParameter, "wind speed must be >= 0");
  if (w == 0.0) return 0.0;
  return std::min(1.0, a * std::pow(w, b));
}

void FragilityParams::validate() const {
  auto check = [](const LognormalCurve& c, const char* name) {
    if (!(c.sigma > 0.0)) throw Error(ErrorCode::InvalidParameter, std::string(name) + " sigma must be > 0");
  };
  check(substation[0], "substation moderate");
  check(substation[1], "substation severe");
  check(substation[2], "substation complete");
  check(tower, "tower");
  check(pole, "pole");
  if (!(substation[0].mu <= substation[1].mu && substation[1].mu <= substation[2].mu)) {
    throw Error(ErrorCode::InvalidParameter, "substation tier medians must be ordered moderate <= severe <= complete");
  }
  if (!(line_critical_ms < line_collapse_ms)) throw Error(ErrorCode::InvalidParameter, "line w_critical >= w_collapse");
  if (!(conductor_a > 0.0 && conductor_b > 0.0)) throw Error(ErrorCode::InvalidParameter, "conductor a, b must be > 0");
}

}  // namespace gridshock
