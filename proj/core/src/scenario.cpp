#include "gridshock/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gridshock/error.hpp"

namespace gridshock {

using nlohmann::json;

std::string_view to_string(Statistic s) noexcept {
  return s == Statistic::PeakHardship ? "peak_hardship" : "hardship_days";
}

Statistic parse_statistic(std::string_view name) {
  if (name == "peak_hardship") return Statistic::PeakHardship;
  if (name == "hardship_days") return Statistic::HardshipDays;
  throw Error(ErrorCode::InvalidParameter, "unknown statistic '" + std::string(name) + "'");
}

void MonteCarloParams::validate() const {
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error(ErrorCode::InvalidParameter, "confidence must be in (0,1)");
  if (!(rel_err > 0.0)) throw Error(ErrorCode::InvalidParameter, "rel_err must be > 0");
  if (min_rep < 2) throw Error(ErrorCode::InvalidParameter, "min_rep must be >= 2");
  if (max_rep < min_rep) throw Error(ErrorCode::InvalidParameter, "max_rep must be >= min_rep");
}

void Scenario::validate() const {
  if (forewarning_days < 0) throw Error(ErrorCode::InvalidParameter, "forewarning_days must be >= 0");
  {
    // An empty track is filled in from the tracts when the world is built.
    HurricaneSpec h = hurricane;
    if (h.track.empty()) h.track.push_back({});
    h.validate();
  }
  resources.validate();
  network.validate();
  info.validate();
  adoption.validate();
  coefficients.validate();
  grid.counts.validate();
  fragility.validate();
  repairs.validate();
  monte_carlo.validate();
  if (population.n_households == 0) throw Error(ErrorCode::InvalidParameter, "n_households must be > 0");
  if (population.tracts_file.has_value() != population.marginals_file.has_value()) {
    throw Error(ErrorCode::InvalidParameter, "tracts_file and marginals_file go together");
  }
  if (!(tolerance_noise_sigma >= 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance noise must be >= 0");
  if (tolerance_override_days && !(*tolerance_override_days > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "tolerance override must be > 0");
  }
}

namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidParameter, std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw Error(ErrorCode::InvalidParameter, fmt::format("unknown key '{}' in {}", key, where));
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

void read_path(const json& j, const char* key, const std::filesystem::path& base,
               std::optional<std::filesystem::path>& out) {
  if (j.contains(key)) {
    if (j.at(key).is_null()) out.reset();
    else out = resolve(base, j.at(key).get<std::string>());
  }
}

void read_hurricane(const json& j, HurricaneSpec& h) {
  only_keys(j, {"category", "duration_h", "decay_length_km", "v_max_ms", "noise_sigma", "track"}, "hurricane");
  read(j, "category", h.category);
  read(j, "duration_h", h.duration_h);
  read(j, "decay_length_km", h.decay_length_km);
  read(j, "noise_sigma", h.noise_sigma);
  if (j.contains("v_max_ms")) {
    const auto v = j.at("v_max_ms").get<std::vector<double>>();
    if (v.size() != 4) throw Error(ErrorCode::InvalidParameter, "v_max_ms needs 4 values");
    std::copy(v.begin(), v.end(), h.v_max_ms.begin());
  }
  if (j.contains("track")) {
    h.track.clear();
    for (const auto& p : j.at("track")) {
      h.track.push_back({p.at("t_h").get<double>(), Point{p.at("x_km").get<double>(), p.at("y_km").get<double>()}});
    }
  }
}

void read_curve(const json& j, const char* median, const char* sigma, LognormalCurve& c) {
  double m = std::exp(c.mu);
  double s = c.sigma;
  read(j, median, m);
  read(j, sigma, s);
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidParameter, std::string(median) + " must be > 0");
  c = LognormalCurve::from_median(m, s);
}

void read_fragility(const json& j, FragilityParams& f) {
  only_keys(j,
            {"substation_median_ms", "substation_sigma", "tower_median_ms", "tower_sigma", "pole_median_ms",
             "pole_sigma", "line_critical_ms", "line_collapse_ms", "conductor_a", "conductor_b"},
            "fragility");
  std::array<double, 3> med{std::exp(f.substation[0].mu), std::exp(f.substation[1].mu), std::exp(f.substation[2].mu)};
  double sigma = f.substation[0].sigma;
  if (j.contains("substation_median_ms")) {
    const auto v = j.at("substation_median_ms").get<std::vector<double>>();
    if (v.size() != 3) throw Error(ErrorCode::InvalidParameter, "substation_median_ms needs 3 values");
    std::copy(v.begin(), v.end(), med.begin());
  }
  read(j, "substation_sigma", sigma);
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(med[k] > 0.0)) throw Error(ErrorCode::InvalidParameter, "substation medians must be > 0");
    f.substation[k] = LognormalCurve::from_median(med[k], sigma);
  }
  read_curve(j, "tower_median_ms", "tower_sigma", f.tower);
  read_curve(j, "pole_median_ms", "pole_sigma", f.pole);
  read(j, "line_critical_ms", f.line_critical_ms);
  read(j, "line_collapse_ms", f.line_collapse_ms);
  read(j, "conductor_a", f.conductor_a);
  read(j, "conductor_b", f.conductor_b);
}

void read_repair_class(const json& j, const char* key, RepairClass& r) {
  if (!j.contains(key)) return;
  const auto& c = j.at(key);
  only_keys(c, {"mean_h", "sd_h", "teams"}, key);
  read(c, "mean_h", r.mean_h);
  read(c, "sd_h", r.sd_h);
  read(c, "teams", r.teams);
}

void read_repairs(const json& j, RepairTable& t) {
  only_keys(j,
            {"substation_moderate", "substation_severe", "substation_complete", "tower", "line", "pole", "conductor",
             "min_duration_h"},
            "repairs");
  read_repair_class(j, "substation_moderate", t.substation[0]);
  read_repair_class(j, "substation_severe", t.substation[1]);
  read_repair_class(j, "substation_complete", t.substation[2]);
  read_repair_class(j, "tower", t.tower);
  read_repair_class(j, "line", t.line);
  read_repair_class(j, "pole", t.pole);
  read_repair_class(j, "conductor", t.conductor);
  read(j, "min_duration_h", t.min_duration_h);
}

json repair_class_json(const RepairClass& r) { return json{{"mean_h", r.mean_h}, {"sd_h", r.sd_h}, {"teams", r.teams}}; }

}  // namespace

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir, Scenario s) {
  try {
    only_keys(j,
              {"name", "hurricane", "wind_file", "forewarning_days", "strategy", "resources", "network", "info",
               "adoption", "coefficients", "grid", "population", "fragility", "damage_mode", "repairs",
               "tolerance_noise_sigma", "tolerance_override_days", "seed", "monte_carlo"},
              "scenario");
    read(j, "name", s.name);
    if (j.contains("hurricane")) read_hurricane(j.at("hurricane"), s.hurricane);
    read_path(j, "wind_file", base_dir, s.wind_file);
    read(j, "forewarning_days", s.forewarning_days);
    if (j.contains("strategy")) s.strategy = parse_strategy(j.at("strategy").get<std::string>());
    if (j.contains("resources")) {
      const auto& r = j.at("resources");
      only_keys(r, {"initial_teams", "growth_per_hour", "growth_horizon_h"}, "resources");
      read(r, "initial_teams", s.resources.initial_teams);
      read(r, "growth_per_hour", s.resources.growth_per_hour);
      read(r, "growth_horizon_h", s.resources.growth_horizon_h);
    }
    if (j.contains("network")) {
      const auto& n = j.at("network");
      only_keys(n, {"kind", "mean_degree", "rewire_p", "attachment_m", "radius_km"}, "network");
      if (n.contains("kind")) s.network.kind = parse_network_kind(n.at("kind").get<std::string>());
      read(n, "mean_degree", s.network.mean_degree);
      read(n, "rewire_p", s.network.rewire_p);
      read(n, "attachment_m", s.network.attachment_m);
      read(n, "radius_km", s.network.radius_km);
    }
    if (j.contains("info")) {
      const auto& i = j.at("info");
      only_keys(i, {"official", "share_prepared", "share_other"}, "info");
      read(i, "official", s.info.official);
      read(i, "share_prepared", s.info.share_prepared);
      read(i, "share_other", s.info.share_other);
    }
    if (j.contains("adoption")) {
      const auto& a = j.at("adoption");
      only_keys(a, {"lambda", "mode", "acting_level", "sample_expectation"}, "adoption");
      read(a, "lambda", s.adoption.lambda);
      if (a.contains("mode")) {
        const auto m = a.at("mode").get<std::string>();
        if (m == "binary") s.adoption.mode = PreparednessMode::Binary;
        else if (m == "ordinal") s.adoption.mode = PreparednessMode::Ordinal;
        else throw Error(ErrorCode::InvalidParameter, "adoption mode must be binary or ordinal");
      }
      read(a, "acting_level", s.adoption.acting_level);
      read(a, "sample_expectation", s.adoption.sample_expectation);
    }
    if (j.contains("coefficients")) {
      const auto& c = j.at("coefficients");
      if (c.is_string()) s.coefficients = load_coefficients(resolve(base_dir, c.get<std::string>()));
      else s.coefficients = coefficients_from_json(c, s.coefficients);
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      only_keys(g,
                {"file", "n_substations", "n_transmission", "n_generators", "customer_per_pole", "tower_spacing_km",
                 "poles_per_feeder", "substation_jitter_km", "seed"},
                "grid");
      read_path(g, "file", base_dir, s.grid.file);
      read(g, "n_substations", s.grid.counts.n_substations);
      read(g, "n_transmission", s.grid.counts.n_transmission);
      read(g, "n_generators", s.grid.counts.n_generators);
      read(g, "customer_per_pole", s.grid.counts.customer_per_pole);
      read(g, "tower_spacing_km", s.grid.counts.tower_spacing_km);
      read(g, "poles_per_feeder", s.grid.counts.poles_per_feeder);
      read(g, "substation_jitter_km", s.grid.counts.substation_jitter_km);
      read(g, "seed", s.grid.seed);
    }
    if (j.contains("population")) {
      const auto& p = j.at("population");
      only_keys(p,
                {"tracts_file", "marginals_file", "n_households", "region_seed", "region_columns", "region_rows",
                 "region_width_km", "region_height_km", "region_total_poles"},
                "population");
      read_path(p, "tracts_file", base_dir, s.population.tracts_file);
      read_path(p, "marginals_file", base_dir, s.population.marginals_file);
      read(p, "n_households", s.population.n_households);
      read(p, "region_seed", s.population.region.seed);
      read(p, "region_columns", s.population.region.columns);
      read(p, "region_rows", s.population.region.rows);
      read(p, "region_width_km", s.population.region.width_km);
      read(p, "region_height_km", s.population.region.height_km);
      read(p, "region_total_poles", s.population.region.total_poles);
    }
    if (j.contains("fragility")) read_fragility(j.at("fragility"), s.fragility);
    if (j.contains("damage_mode")) {
      const auto m = j.at("damage_mode").get<std::string>();
      if (m == "peak_wind") s.damage_mode = DamageMode::PeakWind;
      else if (m == "per_hour") s.damage_mode = DamageMode::PerHour;
      else throw Error(ErrorCode::InvalidParameter, "damage_mode must be peak_wind or per_hour");
    }
    if (j.contains("repairs")) read_repairs(j.at("repairs"), s.repairs);
    read(j, "tolerance_noise_sigma", s.tolerance_noise_sigma);
    if (j.contains("tolerance_override_days")) {
      const auto& t = j.at("tolerance_override_days");
      if (t.is_null()) s.tolerance_override_days.reset();
      else if (t.is_string() && t.get<std::string>() == "inf") s.tolerance_override_days = std::numeric_limits<double>::infinity();
      else s.tolerance_override_days = t.get<double>();
    }
    read(j, "seed", s.seed);
    if (j.contains("monte_carlo")) {
      const auto& m = j.at("monte_carlo");
      only_keys(m, {"confidence", "rel_err", "min_rep", "max_rep", "statistic"}, "monte_carlo");
      read(m, "confidence", s.monte_carlo.confidence);
      read(m, "rel_err", s.monte_carlo.rel_err);
      read(m, "min_rep", s.monte_carlo.min_rep);
      read(m, "max_rep", s.monte_carlo.max_rep);
      if (m.contains("statistic")) s.monte_carlo.statistic = parse_statistic(m.at("statistic").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("scenario: ") + e.what());
  }
  s.adoption.forewarning_days = s.forewarning_days;
  s.validate();
  return s;
}

json scenario_to_json(const Scenario& s) {
  json track = json::array();
  for (const auto& p : s.hurricane.track) track.push_back({{"t_h", p.t_h}, {"x_km", p.center.x_km}, {"y_km", p.center.y_km}});
  json j;
  j["name"] = s.name;
  j["hurricane"] = {{"category", s.hurricane.category},
                    {"duration_h", s.hurricane.duration_h},
                    {"decay_length_km", s.hurricane.decay_length_km},
                    {"v_max_ms", s.hurricane.v_max_ms},
                    {"noise_sigma", s.hurricane.noise_sigma},
                    {"track", track}};
  if (s.wind_file) j["wind_file"] = s.wind_file->string();
  j["forewarning_days"] = s.forewarning_days;
  j["strategy"] = to_string(s.strategy);
  j["resources"] = {{"initial_teams", s.resources.initial_teams},
                    {"growth_per_hour", s.resources.growth_per_hour},
                    {"growth_horizon_h", s.resources.growth_horizon_h}};
  j["network"] = {{"kind", to_string(s.network.kind)},
                  {"mean_degree", s.network.mean_degree},
                  {"rewire_p", s.network.rewire_p},
                  {"attachment_m", s.network.attachment_m},
                  {"radius_km", s.network.radius_km}};
  j["info"] = {{"official", s.info.official},
               {"share_prepared", s.info.share_prepared},
               {"share_other", s.info.share_other}};
  j["adoption"] = {{"lambda", s.adoption.lambda},
                   {"mode", s.adoption.mode == PreparednessMode::Binary ? "binary" : "ordinal"},
                   {"acting_level", s.adoption.acting_level},
                   {"sample_expectation", s.adoption.sample_expectation}};
  j["coefficients"] = coefficients_to_json(s.coefficients);
  json g = {{"n_substations", s.grid.counts.n_substations},
            {"n_transmission", s.grid.counts.n_transmission},
            {"n_generators", s.grid.counts.n_generators},
            {"customer_per_pole", s.grid.counts.customer_per_pole},
            {"tower_spacing_km", s.grid.counts.tower_spacing_km},
            {"poles_per_feeder", s.grid.counts.poles_per_feeder},
            {"substation_jitter_km", s.grid.counts.substation_jitter_km},
            {"seed", s.grid.seed}};
  if (s.grid.file) g["file"] = s.grid.file->string();
  j["grid"] = g;
  json p = {{"n_households", s.population.n_households},
            {"region_seed", s.population.region.seed},
            {"region_columns", s.population.region.columns},
            {"region_rows", s.population.region.rows},
            {"region_width_km", s.population.region.width_km},
            {"region_height_km", s.population.region.height_km},
            {"region_total_poles", s.population.region.total_poles}};
  if (s.population.tracts_file) p["tracts_file"] = s.population.tracts_file->string();
  if (s.population.marginals_file) p["marginals_file"] = s.population.marginals_file->string();
  j["population"] = p;
  const auto& f = s.fragility;
  j["fragility"] = {{"substation_median_ms",
                     {std::exp(f.substation[0].mu), std::exp(f.substation[1].mu), std::exp(f.substation[2].mu)}},
                    {"substation_sigma", f.substation[0].sigma},
                    {"tower_median_ms", std::exp(f.tower.mu)},
                    {"tower_sigma", f.tower.sigma},
                    {"pole_median_ms", std::exp(f.pole.mu)},
                    {"pole_sigma", f.pole.sigma},
                    {"line_critical_ms", f.line_critical_ms},
                    {"line_collapse_ms", f.line_collapse_ms},
                    {"conductor_a", f.conductor_a},
                    {"conductor_b", f.conductor_b}};
  j["damage_mode"] = s.damage_mode == DamageMode::PeakWind ? "peak_wind" : "per_hour";
  j["repairs"] = {{"substation_moderate", repair_class_json(s.repairs.substation[0])},
                  {"substation_severe", repair_class_json(s.repairs.substation[1])},
                  {"substation_complete", repair_class_json(s.repairs.substation[2])},
                  {"tower", repair_class_json(s.repairs.tower)},
                  {"line", repair_class_json(s.repairs.line)},
                  {"pole", repair_class_json(s.repairs.pole)},
                  {"conductor", repair_class_json(s.repairs.conductor)},
                  {"min_duration_h", s.repairs.min_duration_h}};
  j["tolerance_noise_sigma"] = s.tolerance_noise_sigma;
  if (s.tolerance_override_days) {
    if (std::isinf(*s.tolerance_override_days)) j["tolerance_override_days"] = "inf";
    else j["tolerance_override_days"] = *s.tolerance_override_days;
  }
  j["seed"] = s.seed;
  j["monte_carlo"] = {{"confidence", s.monte_carlo.confidence},
                      {"rel_err", s.monte_carlo.rel_err},
                      {"min_rep", s.monte_carlo.min_rep},
                      {"max_rep", s.monte_carlo.max_rep},
                      {"statistic", to_string(s.monte_carlo.statistic)}};
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, path.string() + ": " + e.what());
  }
  return scenario_from_json(j, path.parent_path());
}

std::string population_key(const Scenario& s) {
  const auto& p = s.population;
  return fmt::format("n={};tracts={};marginals={};region={}x{}/{}x{}/{}/{};grid={};seed={}", p.n_households,
                     p.tracts_file ? p.tracts_file->string() : "-", p.marginals_file ? p.marginals_file->string() : "-",
                     p.region.columns, p.region.rows, p.region.width_km, p.region.height_km, p.region.total_poles,
                     p.region.seed, s.grid.file ? s.grid.file->string() : fmt::format("synthetic/{}", s.grid.seed),
                     s.seed);
}

}  // namespace gridshock
