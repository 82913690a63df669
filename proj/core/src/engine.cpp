#include "gridshock/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gridshock/diffusion.hpp"
#include "gridshock/error.hpp"
#include "gridshock/region.hpp"

namespace gridshock {

namespace {

constexpr std::array<std::string_view, 16> kFlagNames{
    "racial_minority", "elderly",    "child_under_10", "mobility_issue", "medical_condition", "chronic_disease",
    "owner",           "vehicle_missing", "social_capital", "flood_zone", "low_income",        "informed",
    "prepared",        "substitute", "outage",         "hardship"};

std::uint16_t bit(HouseholdFlag f) { return static_cast<std::uint16_t>(f); }

}  // namespace

std::span<const std::string_view> household_flag_names() { return kFlagNames; }

HouseholdFlag flag_by_name(std::string_view name) {
  for (std::size_t i = 0; i < kFlagNames.size(); ++i) {
    if (kFlagNames[i] == name) return static_cast<HouseholdFlag>(1u << i);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown household attribute '" + std::string(name) + "'");
}

World build_world(const Scenario& s) {
  s.validate();
  World w;
  if (s.population.tracts_file) {
    w.tracts = load_tracts(*s.population.tracts_file);
    w.marginals = load_marginals(*s.population.marginals_file);
  } else {
    auto region = default_region(s.population.region);
    w.tracts = std::move(region.tracts);
    w.marginals = std::move(region.marginals);
  }
  if (s.grid.file) {
    w.grid = load_grid(*s.grid.file);
  } else {
    Rng rng(s.grid.seed, Stream::Grid);
    w.grid = build_synthetic_grid(w.tracts, s.grid.counts, rng);
  }
  w.hurricane = s.hurricane;
  if (w.hurricane.track.empty()) {
    w.hurricane.track = default_track(w.tracts, w.hurricane.duration_h, w.hurricane.decay_length_km);
  }
  if (s.wind_file) {
    w.wind = load_wind_field(*s.wind_file);
    (void)map_tracts(w.grid, *w.wind);
  }
  return w;
}

double RunResult::peak_hardship() const {
  return daily_hardship.empty() ? 0.0 : *std::max_element(daily_hardship.begin(), daily_hardship.end());
}

double RunResult::hardship_days() const {
  double sum = 0.0;
  for (double v : daily_hardship) sum += v;
  return sum;
}

std::size_t RunResult::failed_components() const {
  std::size_t sum = 0;
  for (auto v : failed_by_class) sum += v;
  return sum;
}

bool in_hardship_on_day(const HouseholdRecord& h, int day) {
  if (!h.has(HouseholdFlag::Hardship)) return false;
  const double from = h.outage_start_h + 24.0 * h.tolerance_days;
  return from < 24.0 * (day + 1) && h.outage_end_h > 24.0 * day;
}

std::vector<double> hardship_series(std::span<const HouseholdRecord> households, std::size_t n_days) {
  if (households.empty()) throw Error(ErrorCode::EmptyPopulation, "hardship series of an empty population");
  std::vector<std::size_t> counts(n_days, 0);
  for (const auto& h : households) {
    if (!h.has(HouseholdFlag::Hardship)) continue;
    const double from = h.outage_start_h + 24.0 * h.tolerance_days;
    const auto first = static_cast<std::size_t>(std::max(0.0, std::floor(from / 24.0)));
    for (std::size_t d = first; d < n_days; ++d) {
      if (!in_hardship_on_day(h, static_cast<int>(d))) {
        if (24.0 * d >= h.outage_end_h) break;
        continue;
      }
      ++counts[d];
    }
  }
  std::vector<double> out(n_days);
  const auto n = static_cast<double>(households.size());
  for (std::size_t d = 0; d < n_days; ++d) out[d] = static_cast<double>(counts[d]) / n;
  return out;
}

std::vector<double> hardship_series(const RunResult& result) {
  return hardship_series(result.households, result.daily_hardship.size());
}

RunResult run_replication(const Scenario& s, const World& world, std::uint64_t seed) {
  RunResult r;
  r.seed = seed;
  const auto& grid = world.grid;

  Rng pop_rng(seed, Stream::Population);
  const auto population =
      synthesize_households(world.tracts, world.marginals, s.population.n_households, s.coefficients, pop_rng, &grid);
  r.population_fingerprint = population.fingerprint();

  Rng net_rng(seed, Stream::Network);
  const auto network = build_social_network(s.network, population, net_rng);

  AdoptionParams adoption = s.adoption;
  adoption.forewarning_days = s.forewarning_days;
  Rng info_rng(seed, Stream::Diffusion);
  Rng adopt_rng(seed, Stream::Adoption);
  const auto behavior = run_forewarning(network, population, s.coefficients, s.info, adoption, info_rng, adopt_rng);

  Rng hazard_rng(seed, Stream::Hazard);
  // Intensity comes from the scenario; the world only fills in a default track.
  HurricaneSpec storm = s.hurricane;
  if (storm.track.empty()) storm.track = world.hurricane.track;
  const WindField field = world.wind ? *world.wind : parametric_wind_series(storm, world.tracts, hazard_rng);

  Rng damage_rng(seed, Stream::Damage);
  auto damage = sample_damage(grid, field, s.fragility, s.damage_mode, damage_rng);
  r.failed_by_class = damage.failed_by_class(grid);
  for (ComponentId c = 0; c < damage.status.size(); ++c) {
    const auto& st = damage.status[c];
    if (!st.failed || grid.components()[c].cls != ComponentClass::Substation) continue;
    if (st.tier == DamageTier::Moderate) ++r.substation_tiers[0];
    else if (st.tier == DamageTier::Severe) ++r.substation_tiers[1];
    else if (st.tier == DamageTier::Complete) ++r.substation_tiers[2];
  }

  Rng priority_rng(seed, Stream::Priorities);
  const auto priorities = plan_priorities(s.strategy, grid, damage, world.tracts, priority_rng);
  Rng repair_rng(seed, Stream::Repair);
  const auto tasks = make_repair_tasks(grid, damage, s.repairs, repair_rng);

  const double offset = 24.0 * s.forewarning_days;
  r.hurricane_start_h = offset;
  r.hurricane_end_h = offset + field.duration_h();
  for (auto& st : damage.status) {
    if (st.failed) st.fail_time_h += offset;
  }
  r.schedule = schedule_repairs(tasks, priorities, s.resources, r.hurricane_end_h);
  const auto outages = compute_outages(grid, damage, r.schedule);

  Rng tol_rng(seed, Stream::Tolerance);
  const auto n = population.size();
  r.households.resize(n);
  std::size_t informed = 0, prepared = 0, substitute = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& h = population.households[i];
    auto& rec = r.households[i];
    rec.tract = h.tract;
    double tol = tolerance_days(s.coefficients, behavior.substitute[i], h.need,
                                behavior.preparedness_value(i, adoption.mode));
    if (s.tolerance_noise_sigma > 0.0) tol *= std::exp(tol_rng.normal(0.0, s.tolerance_noise_sigma));
    if (s.tolerance_override_days) tol = *s.tolerance_override_days;
    rec.tolerance_days = tol;

    std::uint16_t flags = 0;
    auto set = [&flags](HouseholdFlag f, bool on) {
      if (on) flags |= bit(f);
    };
    set(HouseholdFlag::RacialMinority, h.racial_minority);
    set(HouseholdFlag::Elderly, h.elderly);
    set(HouseholdFlag::ChildUnder10, h.child_under_10);
    set(HouseholdFlag::MobilityIssue, h.mobility_issue);
    set(HouseholdFlag::MedicalCondition, h.medical_condition);
    set(HouseholdFlag::ChronicDisease, h.chronic_disease);
    set(HouseholdFlag::Owner, h.owner);
    set(HouseholdFlag::VehicleMissing, h.vehicle_missing);
    set(HouseholdFlag::SocialCapital, h.social_capital);
    set(HouseholdFlag::FloodZone, h.flood_zone);
    set(HouseholdFlag::LowIncome, h.income <= 2);
    set(HouseholdFlag::Informed, behavior.informed[i]);
    set(HouseholdFlag::Prepared, behavior.prepared[i]);
    set(HouseholdFlag::Substitute, behavior.substitute[i]);
    informed += behavior.informed[i];
    prepared += behavior.prepared[i];
    substitute += behavior.substitute[i];

    const auto& o = outages[h.pole];
    if (o.affected) {
      set(HouseholdFlag::Outage, true);
      rec.outage_start_h = o.start_h;
      rec.outage_end_h = o.end_h;
      set(HouseholdFlag::Hardship, (o.end_h - o.start_h) > 24.0 * tol);
    }
    rec.flags = flags;
  }
  const double dn = n == 0 ? 1.0 : static_cast<double>(n);
  r.informed_fraction = static_cast<double>(informed) / dn;
  r.prepared_fraction = static_cast<double>(prepared) / dn;
  r.substitute_fraction = static_cast<double>(substitute) / dn;

  r.full_restoration_day =
      r.schedule.repairs.empty() ? 0 : static_cast<int>(std::ceil(r.schedule.makespan_end_h() / 24.0 - 1e-9));
  const int landfall_day = static_cast<int>(std::ceil(r.hurricane_end_h / 24.0 - 1e-9));
  const auto n_days = static_cast<std::size_t>(std::max(r.full_restoration_day, landfall_day)) + 1;
  r.daily_hardship = hardship_series(r.households, n_days);
  return r;
}

RunResult run_replication(const Scenario& scenario, std::uint64_t seed) {
  return run_replication(scenario, build_world(scenario), seed);
}

}  // namespace gridshock
