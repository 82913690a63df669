#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridshock/engine.hpp"
#include "gridshock/random.hpp"
#include "gridshock/scenario.hpp"

namespace gridshock {

/// Quantile of Student's t with `df` degrees of freedom.
double t_quantile(double p, double df);

struct StoppingDecision {
  std::size_t n = 0;
  bool converged = false;
  double mean = 0.0;
  double half_width = 0.0;
};

/// Mean and t-based confidence half-width of the first n values.
StoppingDecision interval_at(std::span<const double> values, std::size_t n, double confidence);

/// Scans n = min_rep, min_rep + 1, ... up to values.size() and returns the
/// first n whose half-width is within rel_err of the mean (or whose mean is
/// 0). Returns nullopt when no prefix qualifies.
std::optional<StoppingDecision> first_stop(std::span<const double> values, const MonteCarloParams& params);

inline std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, index);
}

/// Runs body(i) for i in [begin, end) on up to `workers` threads. The
/// exception of the lowest failing index is rethrown.
void parallel_for(std::size_t begin, std::size_t end, unsigned workers, const std::function<void(std::size_t)>& body);

template <typename R>
struct Batch {
  std::vector<R> results;
  StoppingDecision decision;
};

/// Replications run in chunks; after each chunk the stopping rule is checked
/// in index order and anything computed past the stopping point is dropped,
/// so the outcome does not depend on `workers`. With `fixed_reps` exactly
/// that many replications run and `converged` reports whether the rule holds
/// at that count.
template <typename R>
Batch<R> run_batched(std::uint64_t master_seed, const MonteCarloParams& params, unsigned workers,
                     const std::function<R(std::size_t, std::uint64_t)>& run,
                     const std::function<double(const R&)>& statistic,
                     std::optional<std::size_t> fixed_reps = std::nullopt) {
  params.validate();
  workers = std::max(1u, workers);
  Batch<R> batch;
  std::vector<std::optional<R>> slots;
  std::vector<double> values;
  auto compute = [&](std::size_t from, std::size_t to) {
    slots.resize(to);
    parallel_for(from, to, workers, [&](std::size_t i) { slots[i] = run(i, replication_seed(master_seed, i)); });
    for (std::size_t i = from; i < to; ++i) values.push_back(statistic(*slots[i]));
  };

  if (fixed_reps) {
    compute(0, *fixed_reps);
    batch.decision = interval_at(values, values.size(), params.confidence);
    batch.decision.converged = values.size() >= 2 && (batch.decision.mean == 0.0 ||
                                                      batch.decision.half_width <= params.rel_err * batch.decision.mean);
  } else {
    std::size_t done = 0;
    std::size_t next = params.min_rep;
    for (;;) {
      compute(done, next);
      done = next;
      if (auto stop = first_stop(values, params)) {
        batch.decision = *stop;
        break;
      }
      if (done >= params.max_rep) {
        batch.decision = interval_at(values, done, params.confidence);
        batch.decision.converged = false;
        break;
      }
      next = std::min(params.max_rep, done + workers);
    }
  }
  batch.results.reserve(batch.decision.n);
  for (std::size_t i = 0; i < batch.decision.n; ++i) batch.results.push_back(std::move(*slots[i]));
  return batch;
}

struct ReplicationSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double peak_hardship = 0.0;
  double hardship_days = 0.0;
  int full_restoration_day = 0;
  double informed_fraction = 0.0;
  double prepared_fraction = 0.0;
  double substitute_fraction = 0.0;
  std::array<std::size_t, kComponentClassCount> failed_by_class{};
  std::array<std::size_t, 3> substation_tiers{};
  std::uint64_t population_fingerprint = 0;
};

/// What a replication contributes to an Aggregate.
struct ReplicationOutput {
  ReplicationSummary summary;
  std::vector<double> daily_hardship;
  std::vector<HouseholdRecord> households;
  std::optional<RepairSchedule> schedule;
};

ReplicationOutput summarize(std::size_t index, RunResult&& result, bool keep_schedule);

struct Aggregate {
  std::string scenario_name;
  std::string population_key;
  std::uint64_t master_seed = 0;
  MonteCarloParams params;
  bool converged = false;
  double statistic_mean = 0.0;
  double statistic_half_width = 0.0;

  std::vector<ReplicationSummary> replications;
  /// Per replication, per household.
  std::vector<std::vector<HouseholdRecord>> households;
  /// Schedule of replication 0.
  std::optional<RepairSchedule> first_schedule;

  std::vector<double> daily_mean;
  std::vector<double> daily_ci_low;
  std::vector<double> daily_ci_high;
  std::vector<double> daily_p25;
  std::vector<double> daily_p75;
  double peak_mean = 0.0;
  double peak_ci_low = 0.0;
  double peak_ci_high = 0.0;
  double restoration_day_mean = 0.0;
  double informed_mean = 0.0;
  double prepared_mean = 0.0;
  double substitute_mean = 0.0;

  std::size_t count() const { return replications.size(); }
};

/// Linear-interpolation percentile (q in [0,1]) of unsorted values.
double percentile(std::vector<double> values, double q);

/// Daily series are padded with zeros to the longest replication.
Aggregate aggregate(const std::string& scenario_name, const std::string& population_key, std::uint64_t master_seed,
                    const MonteCarloParams& params, const StoppingDecision& decision,
                    std::vector<ReplicationOutput>&& outputs);

/// Workers default to the GRIDSHOCK_WORKERS environment variable, else 1.
unsigned default_workers();

Aggregate run_monte_carlo(const Scenario& scenario, const World& world, unsigned workers,
                          std::optional<std::size_t> fixed_reps = std::nullopt);
Aggregate run_monte_carlo(const Scenario& scenario, unsigned workers,
                          std::optional<std::size_t> fixed_reps = std::nullopt);

}  // namespace gridshock
