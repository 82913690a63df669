#pragma once

#include <cstdint>
#include <random>

namespace gridshock {

/// Independent draw streams inside one replication. Each subsystem consumes
/// its own stream so that changing how many draws one of them makes leaves
/// the others untouched.
enum class Stream : std::uint64_t {
  Population = 1,
  Grid = 2,
  Network = 3,
  Diffusion = 4,
  Hazard = 5,
  Damage = 6,
  Repair = 7,
  Tolerance = 8,
  Priorities = 9,
  Adoption = 10,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for child `index` of `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

inline std::uint64_t stream_seed(std::uint64_t replication_seed, Stream s) noexcept {
  return derive_seed(replication_seed, static_cast<std::uint64_t>(s));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  Rng(std::uint64_t replication_seed, Stream s) : Rng(stream_seed(replication_seed, s)) {}

  /// Uniform on [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal(double mean, double sd) { return std::normal_distribution<double>(mean, sd)(engine_); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer on [lo, hi].
  std::uint64_t index(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
  }
  double poisson(double mean) { return static_cast<double>(std::poisson_distribution<long>(mean)(engine_)); }

  /// Normal truncated below at `lower` by rejection.
  double truncated_normal(double mean, double sd, double lower);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gridshock
