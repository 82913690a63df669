#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gridshock/coefficients.hpp"
#include "gridshock/hazard.hpp"
#include "gridshock/population.hpp"
#include "gridshock/random.hpp"

namespace gridshock {

enum class NetworkKind { Random, SmallWorld, ScaleFree, Distance };

std::string_view to_string(NetworkKind k) noexcept;
/// Accepts random, small_world, scale_free, distance.
NetworkKind parse_network_kind(std::string_view name);

struct NetworkParams {
  NetworkKind kind = NetworkKind::ScaleFree;
  /// Mean degree for random; lattice degree (even) for small_world.
  double mean_degree = 6.0;
  double rewire_p = 0.1;
  /// Edges added per arriving node for scale_free.
  std::uint32_t attachment_m = 3;
  double radius_km = 0.3;

  void validate() const;
};

/// Undirected simple graph over household ids; neighbor lists are sorted.
class SocialNetwork {
 public:
  SocialNetwork() = default;
  SocialNetwork(NetworkKind kind, std::vector<std::vector<std::uint32_t>> adjacency);

  NetworkKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t degree(std::uint32_t v) const { return adj_[v].size(); }
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const { return adj_[v]; }
  std::size_t edge_count() const;
  /// Each edge once as (a, b) with a < b, sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

 private:
  NetworkKind kind_ = NetworkKind::Random;
  std::vector<std::vector<std::uint32_t>> adj_;
};

/// Throws InvalidParameter when k >= n or m >= n.
SocialNetwork build_social_network(const NetworkParams& params, std::span<const Point> positions, Rng& rng);
SocialNetwork build_social_network(const NetworkParams& params, const Population& population, Rng& rng);

/// Edge list CSV `a,b`.
void write_edge_list(const SocialNetwork& net, const std::filesystem::path& path);

/// Daily information probabilities.
struct InfoParams {
  double official = 0.5;        // P_o
  double share_prepared = 0.3;  // P_i
  double share_other = 0.1;     // P_n

  void validate() const;
};

enum class PreparednessMode { Binary, Ordinal };

struct AdoptionParams {
  double lambda = 1.0;
  int forewarning_days = 9;
  PreparednessMode mode = PreparednessMode::Binary;
  /// Ordinal mode: levels at or above this count as protective action.
  int acting_level = 3;
  /// Draw the expected outage from its Poisson law instead of using the mean.
  bool sample_expectation = false;

  void validate() const;
};

struct BehaviorState {
  std::vector<std::uint8_t> informed;
  std::vector<int> inform_day;  // -1 when never informed
  std::vector<std::uint8_t> prepared;
  std::vector<int> prepare_day;  // -1 when never prepared
  /// Ordinal mode only; 1 before any draw.
  std::vector<int> prepare_level;
  std::vector<std::uint8_t> substitute;
  std::vector<double> expectation_days;

  explicit BehaviorState(std::size_t n = 0);
  std::size_t size() const { return informed.size(); }
  std::size_t informed_count() const;
  std::size_t prepared_count() const;
  /// Value entering the tolerance model: the 0/1 flag, or the level in ordinal mode.
  double preparedness_value(std::uint32_t h, PreparednessMode mode) const;
};

/// Uninformed households hear the official message w.p. P_o, else each
/// neighbor informed at the start of the day shares w.p. P_i (prepared) or
/// P_n (not prepared).
void step_information(int day, BehaviorState& state, const SocialNetwork& net, const InfoParams& info, Rng& rng);

/// Households informed today decide once on a generator. Every informed,
/// unprepared household then adopts with the daily hazard
/// 1 - (1 - P_p)^(1/f), P_p = sigmoid(x'beta + lambda * F), F the share of
/// neighbors prepared at the start of the day.
void step_adoption(int day, BehaviorState& state, const SocialNetwork& net, const Population& population,
                   const CoefficientSet& coeffs, const AdoptionParams& adoption, Rng& rng);

/// Log-odds of preparedness for household `h` with prepared-neighbor share `f`.
double preparedness_logit(const CoefficientSet& coeffs, const Household& h, double forewarning_days, double lambda,
                          double neighbor_share);

/// Share of `v`'s neighbors with prepared == 1; 0 for an isolated node.
double prepared_neighbor_share(const SocialNetwork& net, const BehaviorState& state, std::uint32_t v);

/// Runs days 0..f-1: information, then adoption. Separate streams keep the
/// two processes' draws independent.
BehaviorState run_forewarning(const SocialNetwork& net, const Population& population, const CoefficientSet& coeffs,
                              const InfoParams& info, const AdoptionParams& adoption, Rng& info_rng,
                              Rng& adoption_rng);

}  // namespace gridshock
