#include "gridshock/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "gridshock/error.hpp"

namespace gridshock {

double t_quantile(double p, double df) {
  if (!(df > 0.0) || !(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidParameter, "t quantile needs df > 0, p in (0,1)");
  return boost::math::quantile(boost::math::students_t_distribution<double>(df), p);
}

StoppingDecision interval_at(std::span<const double> values, std::size_t n, double confidence) {
  StoppingDecision d;
  d.n = n;
  if (n == 0) return d;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += values[i];
  d.mean = sum / static_cast<double>(n);
  if (n < 2) return d;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) ss += (values[i] - d.mean) * (values[i] - d.mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  d.half_width = t_quantile((1.0 + confidence) / 2.0, static_cast<double>(n - 1)) * sd / std::sqrt(double(n));
  return d;
}

std::optional<StoppingDecision> first_stop(std::span<const double> values, const MonteCarloParams& params) {
  for (std::size_t n = params.min_rep; n <= values.size() && n <= params.max_rep; ++n) {
    auto d = interval_at(values, n, params.confidence);
    if (d.mean == 0.0 || d.half_width <= params.rel_err * d.mean) {
      d.converged = true;
      return d;
    }
  }
  return std::nullopt;
}

void parallel_for(std::size_t begin, std::size_t end, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (begin >= end) return;
  const auto n_threads = static_cast<std::size_t>(std::min<std::size_t>(std::max(1u, workers), end - begin));
  std::atomic<std::size_t> next{begin};
  std::mutex mu;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= end) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

ReplicationOutput summarize(std::size_t index, RunResult&& r, bool keep_schedule) {
  ReplicationOutput out;
  auto& s = out.summary;
  s.index = index;
  s.seed = r.seed;
  s.peak_hardship = r.peak_hardship();
  s.hardship_days = r.hardship_days();
  s.full_restoration_day = r.full_restoration_day;
  s.informed_fraction = r.informed_fraction;
  s.prepared_fraction = r.prepared_fraction;
  s.substitute_fraction = r.substitute_fraction;
  s.failed_by_class = r.failed_by_class;
  s.substation_tiers = r.substation_tiers;
  s.population_fingerprint = r.population_fingerprint;
  out.daily_hardship = std::move(r.daily_hardship);
  out.households = std::move(r.households);
  if (keep_schedule) out.schedule = std::move(r.schedule);
  return out;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Aggregate aggregate(const std::string& scenario_name, const std::string& population_key, std::uint64_t master_seed,
                    const MonteCarloParams& params, const StoppingDecision& decision,
                    std::vector<ReplicationOutput>&& outputs) {
  Aggregate a;
  a.scenario_name = scenario_name;
  a.population_key = population_key;
  a.master_seed = master_seed;
  a.params = params;
  a.converged = decision.converged;
  a.statistic_mean = decision.mean;
  a.statistic_half_width = decision.half_width;
  const std::size_t n = outputs.size();
  if (n == 0) return a;

  std::size_t days = 0;
  for (const auto& o : outputs) days = std::max(days, o.daily_hardship.size());
  a.daily_mean.assign(days, 0.0);
  a.daily_ci_low.assign(days, 0.0);
  a.daily_ci_high.assign(days, 0.0);
  a.daily_p25.assign(days, 0.0);
  a.daily_p75.assign(days, 0.0);
  std::vector<double> column(n);
  for (std::size_t d = 0; d < days; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = d < outputs[i].daily_hardship.size() ? outputs[i].daily_hardship[d] : 0.0;
    }
    const auto ci = interval_at(column, n, params.confidence);
    a.daily_mean[d] = ci.mean;
    a.daily_ci_low[d] = ci.mean - ci.half_width;
    a.daily_ci_high[d] = ci.mean + ci.half_width;
    a.daily_p25[d] = percentile(column, 0.25);
    a.daily_p75[d] = percentile(column, 0.75);
  }
  std::vector<double> peaks(n);
  double restoration = 0.0, informed = 0.0, prepared = 0.0, substitute = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = outputs[i].summary;
    peaks[i] = s.peak_hardship;
    restoration += s.full_restoration_day;
    informed += s.informed_fraction;
    prepared += s.prepared_fraction;
    substitute += s.substitute_fraction;
  }
  const auto pci = interval_at(peaks, n, params.confidence);
  a.peak_mean = pci.mean;
  a.peak_ci_low = pci.mean - pci.half_width;
  a.peak_ci_high = pci.mean + pci.half_width;
  const double dn = static_cast<double>(n);
  a.restoration_day_mean = restoration / dn;
  a.informed_mean = informed / dn;
  a.prepared_mean = prepared / dn;
  a.substitute_mean = substitute / dn;

  for (auto& o : outputs) {
    a.replications.push_back(o.summary);
    a.households.push_back(std::move(o.households));
    if (o.schedule && !a.first_schedule) a.first_schedule = std::move(o.schedule);
  }
  return a;
}

unsigned default_workers() {
  if (const char* env = std::getenv("GRIDSHOCK_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

Aggregate run_monte_carlo(const Scenario& scenario, const World& world, unsigned workers,
                          std::optional<std::size_t> fixed_reps) {
  scenario.validate();
  const std::function<ReplicationOutput(std::size_t, std::uint64_t)> run = [&](std::size_t i, std::uint64_t seed) {
    return summarize(i, run_replication(scenario, world, seed), i == 0);
  };
  const bool by_peak = scenario.monte_carlo.statistic == Statistic::PeakHardship;
  const std::function<double(const ReplicationOutput&)> stat = [by_peak](const ReplicationOutput& o) {
    return by_peak ? o.summary.peak_hardship : o.summary.hardship_days;
  };
  auto batch = run_batched(scenario.seed, scenario.monte_carlo, workers, run, stat, fixed_reps);
  return aggregate(scenario.name, population_key(scenario), scenario.seed, scenario.monte_carlo, batch.decision,
                   std::move(batch.results));
}

Aggregate run_monte_carlo(const Scenario& scenario, unsigned workers, std::optional<std::size_t> fixed_reps) {
  return run_monte_carlo(scenario, build_world(scenario), workers, fixed_reps);
}

}  // namespace gridshock
