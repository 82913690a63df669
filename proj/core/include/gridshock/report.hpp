#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridshock/engine.hpp"
#include "gridshock/monte_carlo.hpp"
#include "gridshock/scenario.hpp"

namespace gridshock {

/// Probability that a household of a group is in hardship at some point,
/// summarized over replications.
struct GroupProbability {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Replications in which the group was non-empty.
  std::size_t replications = 0;
  /// Per replication; NaN where the group was empty.
  std::vector<double> per_replication;
};

struct GroupStats {
  std::string attribute;
  GroupProbability in_group;   // attribute = 1
  GroupProbability out_group;  // attribute = 0
  GroupProbability overall;
  /// in_group - out_group.
  double absolute_gap = 0.0;
  /// (in_group - out_group) / out_group; NaN when out_group is 0.
  double relative_gap = 0.0;
  /// Some replication had an empty group.
  bool undefined = false;

  /// Throws UndefinedGroup when `undefined`.
  void require_defined() const;
};

/// Share of group members in hardship; nullopt for an empty group.
std::optional<double> group_share(std::span<const HouseholdRecord> households, HouseholdFlag flag, bool value);

GroupStats group_hardship_probability(const Aggregate& aggregate, std::string_view attribute);

using Cell = std::variant<std::string, double, std::int64_t>;

/// Rectangular result table with a fixed column order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvalidParameter on a row of the wrong width.
  void add_row(std::vector<Cell> row);
  friend bool operator==(const Table&, const Table&) = default;
};

enum class Format { Csv, Json };

/// Throws UnknownFormat.
Format parse_format(std::string_view name);

/// Numbers are written with 15 significant digits.
std::string render_table(const Table& table, Format format);
void export_table(const Table& table, Format format, const std::filesystem::path& path);
Table import_table(const std::filesystem::path& path, Format format);
Table parse_table(const std::string& text, Format format);

/// One row per aggregate with its difference from the baseline. Throws
/// UnknownBaseline and MismatchedPopulation.
Table compare_scenarios(std::span<const Aggregate> aggregates, std::string_view baseline,
                        std::string_view group = "racial_minority");

nlohmann::ordered_json aggregate_to_json(const Aggregate& aggregate);
Table daily_table(const Aggregate& aggregate);
Table household_table(const Aggregate& aggregate);
Table damage_table(const Aggregate& aggregate);

/// aggregate.json, daily_hardship.csv, households.csv, damage.csv and, when
/// present, schedule.csv for replication 0.
void write_run_outputs(const Aggregate& aggregate, const std::filesystem::path& dir);
/// Reads back what write_run_outputs wrote (schedule excluded).
Aggregate load_run_outputs(const std::filesystem::path& dir);

/// Scenario grid: every combination of the listed values around `base`.
struct SweepSpec {
  Scenario base;
  std::vector<int> categories;
  std::vector<int> forewarning_days;
  std::vector<Strategy> strategies;
  std::vector<NetworkKind> networks;
  std::vector<ResourceProfile> resources;
  std::vector<double> official;
  std::optional<std::size_t> reps;
  std::string group = "racial_minority";
};

SweepSpec sweep_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
SweepSpec load_sweep(const std::filesystem::path& path);
std::vector<Scenario> sweep_scenarios(const SweepSpec& spec);

using SweepCallback = std::function<void(const Scenario&, const Aggregate&)>;
Table run_sweep(const SweepSpec& spec, unsigned workers, const SweepCallback& on_cell = {});

}  // namespace gridshock
