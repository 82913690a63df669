#include "gridshock/region.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "gridshock/error.hpp"
#include "gridshock/random.hpp"

namespace gridshock {

namespace {

double clamp01(double v, double lo = 0.01, double hi = 0.99) { return std::clamp(v, lo, hi); }

std::vector<std::uint32_t> apportion(const std::vector<double>& weights, std::uint32_t total) {
  const auto n = static_cast<std::uint32_t>(weights.size());
  std::vector<std::uint32_t> out(n, 1);
  const std::uint32_t rest = total - n;
  double sum = 0.0;
  for (double w : weights) sum += w;
  std::vector<std::pair<double, std::uint32_t>> rem;
  std::uint32_t given = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double exact = rest * weights[i] / sum;
    const auto whole = static_cast<std::uint32_t>(std::floor(exact));
    out[i] += whole;
    given += whole;
    rem.emplace_back(exact - whole, i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::uint32_t k = 0; given < rest; ++k, ++given) ++out[rem[k].second];
  return out;
}

}  // namespace

Region default_region(const RegionParams& p) {
  const std::uint32_t n = p.columns * p.rows;
  if (n == 0 || p.total_poles < n) {
    throw Error(ErrorCode::InvalidParameter, "region needs at least one tract and one pole per tract");
  }
  Rng rng(p.seed, Stream::Population);
  const double cw = p.width_km / p.columns;
  const double ch = p.height_km / p.rows;

  Region region;
  std::vector<double> weights;
  for (std::uint32_t r = 0; r < p.rows; ++r) {
    for (std::uint32_t c = 0; c < p.columns; ++c) {
      Tract t;
      t.id = fmt::format("T{:03}", region.tracts.size() + 1);
      t.centroid = Point{(c + 0.5) * cw + rng.uniform(-0.25, 0.25) * cw, (r + 0.5) * ch + rng.uniform(-0.25, 0.25) * ch};
      const double east = t.centroid.x_km / p.width_km;
      const double south = 1.0 - t.centroid.y_km / p.height_km;
      t.svi = clamp01(0.15 + 0.7 * (0.6 * east + 0.4 * south) + rng.normal(0.0, 0.08));
      t.flood_zone_fraction = clamp01(0.05 + 0.35 * south + rng.normal(0.0, 0.03), 0.0, 1.0);
      region.tracts.push_back(t);
      weights.push_back(rng.uniform(0.5, 1.5));
    }
  }
  const auto poles = apportion(weights, p.total_poles);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto& t = region.tracts[i];
    t.population = poles[i] * p.customers_per_pole - static_cast<double>(rng.index(0, 39));
    const double s = t.svi;
    TractMarginals m;
    m.tract_id = t.id;
    // Income shifts toward the low brackets as vulnerability grows.
    double sum = 0.0;
    for (int b = 0; b < 7; ++b) {
      m.income[b] = std::exp(-(s - 0.35) * 0.9 * b);
      sum += m.income[b];
    }
    for (double& v : m.income) v /= sum;
    m.racial_minority = clamp01(0.15 + 0.7 * s + rng.normal(0.0, 0.03));
    m.elderly = clamp01(0.12 + 0.08 * s);
    m.child_under_10 = clamp01(0.18 + 0.12 * s);
    m.mobility_issue = clamp01(0.05 + 0.15 * s);
    m.medical_condition = clamp01(0.10 + 0.15 * s);
    m.chronic_disease = clamp01(0.20 + 0.15 * s);
    m.owner = clamp01(0.78 - 0.45 * s);
    m.vehicle_missing = clamp01(0.02 + 0.18 * s);
    m.social_capital = clamp01(0.60 - 0.20 * s);
    region.marginals.push_back(m);
  }
  return region;
}

}  // namespace gridshock
