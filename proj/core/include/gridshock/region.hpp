#pragma once

#include <cstdint>
#include <vector>

#include "gridshock/hazard.hpp"
#include "gridshock/population.hpp"

namespace gridshock {

/// Synthetic coastal county used when no tract files are supplied: a jittered
/// lattice of tracts whose pole counts add up to `total_poles` at 40 customers
/// per pole. Social vulnerability rises toward the south-east and the other
/// shares follow it.
struct RegionParams {
  std::uint32_t columns = 10;
  std::uint32_t rows = 10;
  double width_km = 80.0;
  double height_km = 64.0;
  std::uint32_t total_poles = 1433;
  double customers_per_pole = 40.0;
  std::uint64_t seed = 2017;
};

struct Region {
  std::vector<Tract> tracts;
  std::vector<TractMarginals> marginals;
};

Region default_region(const RegionParams& params = {});

}  // namespace gridshock
