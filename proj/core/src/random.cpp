#include "gridshock/random.hpp"

#include <algorithm>
#include <cmath>

namespace gridshock {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double Rng::truncated_normal(double mean, double sd, double lower) {
  if (sd <= 0.0) return std::max(mean, lower);
  // Mass above `lower` is large for every use in this library, so rejection
  // terminates quickly; fall back to the bound after many misses.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    double v = normal(mean, sd);
    if (v >= lower) return v;
  }
  return lower;
}

}  // namespace gridshock
