#include "gridshock/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "gridshock/error.hpp"

namespace gridshock {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// The double nearest to v's 15-significant-digit rendering.
double round15(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(csv::sig15(v).c_str(), nullptr);
}

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round15(v);
}

double from_num(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

GroupProbability summarize_group(std::vector<double> per_rep, double confidence) {
  GroupProbability g;
  std::vector<double> defined;
  for (double v : per_rep) {
    if (!std::isnan(v)) defined.push_back(v);
  }
  g.per_replication = std::move(per_rep);
  g.replications = defined.size();
  if (defined.empty()) {
    g.mean = g.ci_low = g.ci_high = kNaN;
    return g;
  }
  const auto ci = interval_at(defined, defined.size(), confidence);
  g.mean = ci.mean;
  g.ci_low = ci.mean - ci.half_width;
  g.ci_high = ci.mean + ci.half_width;
  return g;
}

}  // namespace

void GroupStats::require_defined() const {
  if (undefined) throw Error(ErrorCode::UndefinedGroup, "group '" + attribute + "' is empty in some replication");
}

std::optional<double> group_share(std::span<const HouseholdRecord> households, HouseholdFlag flag, bool value) {
  std::size_t size = 0, hit = 0;
  for (const auto& h : households) {
    if (h.has(flag) != value) continue;
    ++size;
    hit += h.has(HouseholdFlag::Hardship);
  }
  if (size == 0) return std::nullopt;
  return static_cast<double>(hit) / static_cast<double>(size);
}

GroupStats group_hardship_probability(const Aggregate& a, std::string_view attribute) {
  const auto flag = flag_by_name(attribute);
  GroupStats g;
  g.attribute = std::string(attribute);
  std::vector<double> in, out, all;
  for (const auto& rep : a.households) {
    const auto i = group_share(rep, flag, true);
    const auto o = group_share(rep, flag, false);
    g.undefined = g.undefined || !i || !o;
    in.push_back(i.value_or(kNaN));
    out.push_back(o.value_or(kNaN));
    std::size_t hit = 0;
    for (const auto& h : rep) hit += h.has(HouseholdFlag::Hardship);
    all.push_back(rep.empty() ? kNaN : static_cast<double>(hit) / static_cast<double>(rep.size()));
  }
  if (a.households.empty()) g.undefined = true;
  const double conf = a.params.confidence;
  g.in_group = summarize_group(std::move(in), conf);
  g.out_group = summarize_group(std::move(out), conf);
  g.overall = summarize_group(std::move(all), conf);
  g.absolute_gap = g.in_group.mean - g.out_group.mean;
  g.relative_gap = g.out_group.mean == 0.0 ? kNaN : g.absolute_gap / g.out_group.mean;
  return g;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("row has {} cells, table has {} columns", row.size(), columns.size()));
  }
  rows.push_back(std::move(row));
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error(ErrorCode::UnknownFormat, "unknown export format '" + std::string(name) + "'");
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const double v = std::get<double>(c);
  std::string text = csv::sig15(v);
  // Keep doubles distinguishable from integers on re-import.
  if (std::isfinite(v) && text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

Cell parse_csv_cell(const std::string& text) {
  if (text.empty()) return text;
  std::int64_t i = 0;
  const char* end = text.data() + text.size();
  auto ri = std::from_chars(text.data(), end, i);
  if (ri.ec == std::errc() && ri.ptr == end) return i;
  double d = 0.0;
  auto rd = std::from_chars(text.data(), end, d);
  if (rd.ec == std::errc() && rd.ptr == end) return d;
  return text;
}

}  // namespace

std::string render_table(const Table& t, Format format) {
  if (format == Format::Csv) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_cell(row[c]);
      out += '\n';
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) {
      if (const auto* s = std::get_if<std::string>(&c)) r.push_back(*s);
      else if (const auto* i = std::get_if<std::int64_t>(&c)) r.push_back(*i);
      else r.push_back(num(std::get<double>(c)));
    }
    rows.push_back(std::move(r));
  }
  ordered_json j;
  j["columns"] = t.columns;
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void export_table(const Table& table, Format format, const std::filesystem::path& path) {
  const auto text = render_table(table, format);
  auto out = csv::open_for_write(path);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

Table parse_table(const std::string& text, Format format) {
  Table t;
  if (format == Format::Csv) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "table has no header");
    t.columns = csv::split(line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<Cell> row;
      for (auto& f : csv::split(line)) row.push_back(parse_csv_cell(f));
      t.add_row(std::move(row));
    }
    return t;
  }
  try {
    const auto j = json::parse(text);
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      std::vector<Cell> row;
      for (const auto& c : r) {
        if (c.is_string()) row.emplace_back(c.get<std::string>());
        else if (c.is_number_integer()) row.emplace_back(c.get<std::int64_t>());
        else row.emplace_back(from_num(c));
      }
      t.add_row(std::move(row));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("table json: ") + e.what());
  }
  return t;
}

Table import_table(const std::filesystem::path& path, Format format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str(), format);
}

Table compare_scenarios(std::span<const Aggregate> aggregates, std::string_view baseline, std::string_view group) {
  const Aggregate* base = nullptr;
  for (const auto& a : aggregates) {
    if (a.scenario_name == baseline) base = &a;
  }
  if (base == nullptr) throw Error(ErrorCode::UnknownBaseline, "no aggregate named '" + std::string(baseline) + "'");
  for (const auto& a : aggregates) {
    if (a.population_key != base->population_key) {
      throw Error(ErrorCode::MismatchedPopulation,
                  "scenario '" + a.scenario_name + "' samples a different population than the baseline");
    }
  }
  const auto g_base = group_hardship_probability(*base, group);
  const std::string gname(group);
  Table t;
  t.columns = {"scenario",
               "replications",
               "peak_mean",
               "peak_delta",
               "restoration_day_mean",
               "restoration_day_delta",
               gname + "_prob",
               gname + "_prob_delta",
               "other_prob",
               "other_prob_delta",
               gname + "_gap",
               gname + "_gap_delta"};
  for (const auto& a : aggregates) {
    const auto g = group_hardship_probability(a, group);
    t.add_row({a.scenario_name, static_cast<std::int64_t>(a.count()), a.peak_mean, a.peak_mean - base->peak_mean,
               a.restoration_day_mean, a.restoration_day_mean - base->restoration_day_mean, g.in_group.mean,
               g.in_group.mean - g_base.in_group.mean, g.out_group.mean, g.out_group.mean - g_base.out_group.mean,
               g.absolute_gap, g.absolute_gap - g_base.absolute_gap});
  }
  return t;
}

namespace {

ordered_json group_json(const GroupProbability& g) {
  return ordered_json{{"mean", num(g.mean)},
                      {"ci_low", num(g.ci_low)},
                      {"ci_high", num(g.ci_high)},
                      {"replications", g.replications}};
}

ordered_json series(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> series_from(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(from_num(x));
  return v;
}

}  // namespace

ordered_json aggregate_to_json(const Aggregate& a) {
  ordered_json j;
  j["scenario"] = a.scenario_name;
  j["population_key"] = a.population_key;
  j["master_seed"] = std::to_string(a.master_seed);
  j["replications"] = a.count();
  j["converged"] = a.converged;
  if (!a.converged) {
    j["warning"] = fmt::format("stopping rule not met after {} replications", a.count());
  }
  j["monte_carlo"] = {{"confidence", num(a.params.confidence)},
                      {"rel_err", num(a.params.rel_err)},
                      {"min_rep", a.params.min_rep},
                      {"max_rep", a.params.max_rep},
                      {"statistic", to_string(a.params.statistic)}};
  j["statistic"] = {{"mean", num(a.statistic_mean)}, {"half_width", num(a.statistic_half_width)}};
  j["peak_hardship"] = {{"mean", num(a.peak_mean)}, {"ci_low", num(a.peak_ci_low)}, {"ci_high", num(a.peak_ci_high)}};
  j["restoration_day_mean"] = num(a.restoration_day_mean);
  j["informed_mean"] = num(a.informed_mean);
  j["prepared_mean"] = num(a.prepared_mean);
  j["substitute_mean"] = num(a.substitute_mean);
  j["daily"] = {{"mean", series(a.daily_mean)},
                {"ci_low", series(a.daily_ci_low)},
                {"ci_high", series(a.daily_ci_high)},
                {"p25", series(a.daily_p25)},
                {"p75", series(a.daily_p75)}};
  if (!a.households.empty() && !a.households.front().empty()) {
    const auto g = group_hardship_probability(a, "racial_minority");
    j["groups"]["racial_minority"] = {{"in_group", group_json(g.in_group)},
                                      {"out_group", group_json(g.out_group)},
                                      {"overall", group_json(g.overall)},
                                      {"absolute_gap", num(g.absolute_gap)},
                                      {"relative_gap", num(g.relative_gap)},
                                      {"undefined", g.undefined}};
  }
  ordered_json reps = ordered_json::array();
  for (const auto& r : a.replications) {
    ordered_json failed;
    for (std::size_t c = 0; c < kComponentClassCount; ++c) {
      failed[std::string(to_string(static_cast<ComponentClass>(c)))] = r.failed_by_class[c];
    }
    reps.push_back({{"index", r.index},
                    {"seed", std::to_string(r.seed)},
                    {"peak_hardship", num(r.peak_hardship)},
                    {"hardship_days", num(r.hardship_days)},
                    {"full_restoration_day", r.full_restoration_day},
                    {"informed_fraction", num(r.informed_fraction)},
                    {"prepared_fraction", num(r.prepared_fraction)},
                    {"substitute_fraction", num(r.substitute_fraction)},
                    {"failed", failed},
                    {"substation_tiers", r.substation_tiers},
                    {"population_fingerprint", fmt::format("{:016x}", r.population_fingerprint)}});
  }
  j["replication_summaries"] = std::move(reps);
  return j;
}

Table daily_table(const Aggregate& a) {
  Table t;
  t.columns = {"day", "mean", "ci_low", "ci_high", "p25", "p75"};
  for (std::size_t d = 0; d < a.daily_mean.size(); ++d) {
    t.add_row({static_cast<std::int64_t>(d), a.daily_mean[d], a.daily_ci_low[d], a.daily_ci_high[d], a.daily_p25[d],
               a.daily_p75[d]});
  }
  return t;
}

Table household_table(const Aggregate& a) {
  Table t;
  t.columns = {"replication", "household_id", "tract", "outage_start_h", "outage_end_h", "tolerance_days"};
  for (auto name : household_flag_names()) t.columns.emplace_back(name);
  for (std::size_t r = 0; r < a.households.size(); ++r) {
    for (std::size_t h = 0; h < a.households[r].size(); ++h) {
      const auto& rec = a.households[r][h];
      std::vector<Cell> row{static_cast<std::int64_t>(r), static_cast<std::int64_t>(h),
                            static_cast<std::int64_t>(rec.tract), rec.outage_start_h, rec.outage_end_h,
                            rec.tolerance_days};
      for (std::size_t b = 0; b < household_flag_names().size(); ++b) {
        row.emplace_back(static_cast<std::int64_t>((rec.flags >> b) & 1u));
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

Table damage_table(const Aggregate& a) {
  Table t;
  t.columns = {"replication"};
  for (std::size_t c = 0; c < kComponentClassCount; ++c) {
    t.columns.emplace_back(std::string(to_string(static_cast<ComponentClass>(c))) + "_failed");
  }
  t.columns.insert(t.columns.end(), {"substation_moderate", "substation_severe", "substation_complete",
                                     "total_failed", "full_restoration_day"});
  for (const auto& r : a.replications) {
    std::vector<Cell> row{static_cast<std::int64_t>(r.index)};
    std::int64_t total = 0;
    for (auto v : r.failed_by_class) {
      row.emplace_back(static_cast<std::int64_t>(v));
      total += static_cast<std::int64_t>(v);
    }
    for (auto v : r.substation_tiers) row.emplace_back(static_cast<std::int64_t>(v));
    row.emplace_back(total);
    row.emplace_back(static_cast<std::int64_t>(r.full_restoration_day));
    t.add_row(std::move(row));
  }
  return t;
}

void write_run_outputs(const Aggregate& a, const std::filesystem::path& dir) {
  {
    auto out = csv::open_for_write(dir / "aggregate.json");
    out << aggregate_to_json(a).dump(2) << '\n';
  }
  export_table(daily_table(a), Format::Csv, dir / "daily_hardship.csv");
  export_table(household_table(a), Format::Csv, dir / "households.csv");
  export_table(damage_table(a), Format::Csv, dir / "damage.csv");
  if (a.first_schedule) write_schedule_csv(*a.first_schedule, dir / "schedule.csv");
}

Aggregate load_run_outputs(const std::filesystem::path& dir) {
  std::ifstream in(dir / "aggregate.json");
  if (!in) throw Error(ErrorCode::Io, "cannot open " + (dir / "aggregate.json").string());
  Aggregate a;
  try {
    json j;
    in >> j;
    a.scenario_name = j.at("scenario").get<std::string>();
    a.population_key = j.at("population_key").get<std::string>();
    a.master_seed = std::stoull(j.at("master_seed").get<std::string>());
    a.converged = j.at("converged").get<bool>();
    const auto& mc = j.at("monte_carlo");
    a.params.confidence = mc.at("confidence").get<double>();
    a.params.rel_err = mc.at("rel_err").get<double>();
    a.params.min_rep = mc.at("min_rep").get<std::size_t>();
    a.params.max_rep = mc.at("max_rep").get<std::size_t>();
    a.params.statistic = parse_statistic(mc.at("statistic").get<std::string>());
    a.statistic_mean = from_num(j.at("statistic").at("mean"));
    a.statistic_half_width = from_num(j.at("statistic").at("half_width"));
    a.peak_mean = from_num(j.at("peak_hardship").at("mean"));
    a.peak_ci_low = from_num(j.at("peak_hardship").at("ci_low"));
    a.peak_ci_high = from_num(j.at("peak_hardship").at("ci_high"));
    a.restoration_day_mean = from_num(j.at("restoration_day_mean"));
    a.informed_mean = from_num(j.at("informed_mean"));
    a.prepared_mean = from_num(j.at("prepared_mean"));
    a.substitute_mean = from_num(j.at("substitute_mean"));
    const auto& d = j.at("daily");
    a.daily_mean = series_from(d.at("mean"));
    a.daily_ci_low = series_from(d.at("ci_low"));
    a.daily_ci_high = series_from(d.at("ci_high"));
    a.daily_p25 = series_from(d.at("p25"));
    a.daily_p75 = series_from(d.at("p75"));
    for (const auto& r : j.at("replication_summaries")) {
      ReplicationSummary s;
      s.index = r.at("index").get<std::size_t>();
      s.seed = std::stoull(r.at("seed").get<std::string>());
      s.peak_hardship = from_num(r.at("peak_hardship"));
      s.hardship_days = from_num(r.at("hardship_days"));
      s.full_restoration_day = r.at("full_restoration_day").get<int>();
      s.informed_fraction = from_num(r.at("informed_fraction"));
      s.prepared_fraction = from_num(r.at("prepared_fraction"));
      s.substitute_fraction = from_num(r.at("substitute_fraction"));
      for (std::size_t c = 0; c < kComponentClassCount; ++c) {
        s.failed_by_class[c] = r.at("failed").at(std::string(to_string(static_cast<ComponentClass>(c))));
      }
      s.substation_tiers = r.at("substation_tiers").get<std::array<std::size_t, 3>>();
      s.population_fingerprint = std::stoull(r.at("population_fingerprint").get<std::string>(), nullptr, 16);
      a.replications.push_back(s);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("aggregate.json: ") + e.what());
  }

  const auto table = import_table(dir / "households.csv", Format::Csv);
  a.households.assign(a.replications.size(), {});
  const auto n_flags = household_flag_names().size();
  for (const auto& row : table.rows) {
    auto as_int = [](const Cell& c) {
      if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
      throw Error(ErrorCode::MalformedRow, "households.csv: expected an integer");
    };
    auto as_double = [](const Cell& c) {
      if (const auto* d = std::get_if<double>(&c)) return *d;
      if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
      throw Error(ErrorCode::MalformedRow, "households.csv: expected a number");
    };
    const auto rep = static_cast<std::size_t>(as_int(row[0]));
    if (rep >= a.households.size()) throw Error(ErrorCode::MalformedRow, "households.csv: replication out of range");
    HouseholdRecord rec;
    rec.tract = static_cast<std::uint32_t>(as_int(row[2]));
    rec.outage_start_h = as_double(row[3]);
    rec.outage_end_h = as_double(row[4]);
    rec.tolerance_days = as_double(row[5]);
    for (std::size_t b = 0; b < n_flags; ++b) {
      if (as_int(row[6 + b]) != 0) rec.flags |= static_cast<std::uint16_t>(1u << b);
    }
    a.households[rep].push_back(rec);
  }
  return a;
}

namespace {

std::string cell_name(const Scenario& s) {
  return fmt::format("cat{}_f{}_{}_{}_r{}+{}_po{}", s.hurricane.category, s.forewarning_days, to_string(s.strategy),
                     to_string(s.network.kind), s.resources.initial_teams, s.resources.growth_per_hour,
                     s.info.official);
}

template <typename T>
std::vector<T> or_base(const std::vector<T>& values, T base) {
  return values.empty() ? std::vector<T>{base} : values;
}

}  // namespace

SweepSpec sweep_from_json(const json& j, const std::filesystem::path& base_dir) {
  SweepSpec spec;
  try {
    for (const auto& [key, _] : j.items()) {
      static const std::vector<std::string> allowed{"base",     "base_file", "categories", "forewarning_days",
                                                    "strategies", "networks", "resources",  "official",
                                                    "reps",     "group"};
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw Error(ErrorCode::InvalidParameter, "unknown key '" + key + "' in sweep spec");
      }
    }
    if (j.contains("base_file")) {
      std::filesystem::path p(j.at("base_file").get<std::string>());
      spec.base = load_scenario(p.is_absolute() || base_dir.empty() ? p : base_dir / p);
    }
    if (j.contains("base")) spec.base = scenario_from_json(j.at("base"), base_dir, spec.base);
    if (j.contains("categories")) spec.categories = j.at("categories").get<std::vector<int>>();
    if (j.contains("forewarning_days")) spec.forewarning_days = j.at("forewarning_days").get<std::vector<int>>();
    if (j.contains("strategies")) {
      for (const auto& s : j.at("strategies")) spec.strategies.push_back(parse_strategy(s.get<std::string>()));
    }
    if (j.contains("networks")) {
      for (const auto& s : j.at("networks")) spec.networks.push_back(parse_network_kind(s.get<std::string>()));
    }
    if (j.contains("resources")) {
      for (const auto& r : j.at("resources")) {
        ResourceProfile p = spec.base.resources;
        if (r.contains("initial_teams")) p.initial_teams = r.at("initial_teams").get<double>();
        if (r.contains("growth_per_hour")) p.growth_per_hour = r.at("growth_per_hour").get<double>();
        if (r.contains("growth_horizon_h")) p.growth_horizon_h = r.at("growth_horizon_h").get<double>();
        p.validate();
        spec.resources.push_back(p);
      }
    }
    if (j.contains("official")) spec.official = j.at("official").get<std::vector<double>>();
    if (j.contains("reps")) {
      const auto& r = j.at("reps");
      if (r.is_string()) {
        if (r.get<std::string>() != "auto") throw Error(ErrorCode::InvalidParameter, "reps must be 'auto' or a count");
      } else {
        spec.reps = r.get<std::size_t>();
      }
    }
    if (j.contains("group")) spec.group = j.at("group").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("sweep spec: ") + e.what());
  }
  (void)flag_by_name(spec.group);
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, path.string() + ": " + e.what());
  }
  return sweep_from_json(j, path.parent_path());
}

std::vector<Scenario> sweep_scenarios(const SweepSpec& spec) {
  const auto& b = spec.base;
  std::vector<Scenario> out;
  for (int cat : or_base(spec.categories, b.hurricane.category)) {
    for (int f : or_base(spec.forewarning_days, b.forewarning_days)) {
      for (Strategy st : or_base(spec.strategies, b.strategy)) {
        for (NetworkKind nk : or_base(spec.networks, b.network.kind)) {
          for (const auto& res : or_base(spec.resources, b.resources)) {
            for (double po : or_base(spec.official, b.info.official)) {
              Scenario s = b;
              s.hurricane.category = cat;
              s.forewarning_days = f;
              s.adoption.forewarning_days = f;
              s.strategy = st;
              s.network.kind = nk;
              s.resources = res;
              s.info.official = po;
              s.name = cell_name(s);
              s.validate();
              out.push_back(std::move(s));
            }
          }
        }
      }
    }
  }
  return out;
}

Table run_sweep(const SweepSpec& spec, unsigned workers, const SweepCallback& on_cell) {
  const auto cells = sweep_scenarios(spec);
  World base_world = build_world(spec.base);
  const std::string& g = spec.group;
  Table t;
  t.columns = {"scenario",      "category",         "forewarning_days",     "strategy",        "network",
               "initial_teams", "growth_per_hour",  "p_official",           "replications",    "converged",
               "peak_mean",     "peak_ci_low",      "peak_ci_high",         "restoration_day_mean",
               "informed_mean", "prepared_mean",    "substitute_mean",      g + "_prob",       "other_prob",
               g + "_gap"};
  for (const auto& s : cells) {
    const auto a = run_monte_carlo(s, base_world, workers, spec.reps);
    const auto gs = group_hardship_probability(a, g);
    t.add_row({s.name, static_cast<std::int64_t>(s.hurricane.category), static_cast<std::int64_t>(s.forewarning_days),
               std::string(to_string(s.strategy)), std::string(to_string(s.network.kind)), s.resources.initial_teams,
               s.resources.growth_per_hour, s.info.official, static_cast<std::int64_t>(a.count()),
               static_cast<std::int64_t>(a.converged), a.peak_mean, a.peak_ci_low, a.peak_ci_high,
               a.restoration_day_mean, a.informed_mean, a.prepared_mean, a.substitute_mean, gs.in_group.mean,
               gs.out_group.mean, gs.absolute_gap});
    if (on_cell) on_cell(s, a);
  }
  return t;
}

}  // namespace gridshock
