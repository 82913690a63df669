// gridshock command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gridshock/engine.hpp"
#include "gridshock/error.hpp"
#include "gridshock/grid.hpp"
#include "gridshock/monte_carlo.hpp"
#include "gridshock/population.hpp"
#include "gridshock/report.hpp"
#include "gridshock/scenario.hpp"

namespace fs = std::filesystem;
using namespace gridshock;

namespace {

std::optional<std::size_t> parse_reps(const std::string& reps) {
  if (reps == "auto") return std::nullopt;
  std::size_t pos = 0;
  const auto k = std::stoull(reps, &pos);
  if (pos != reps.size() || k == 0) throw Error(ErrorCode::InvalidParameter, "--reps must be 'auto' or a positive count");
  return static_cast<std::size_t>(k);
}

Scenario scenario_or_default(const std::string& path) {
  return path.empty() ? scenario_from_json(nlohmann::json::object()) : load_scenario(path);
}

void print_group(const GroupStats& g) {
  fmt::print("{:<12} {:>10} {:>10} {:>10} {:>6}\n", "group", "mean", "ci_low", "ci_high", "reps");
  auto line = [](const char* name, const GroupProbability& p) {
    fmt::print("{:<12} {:>10.4f} {:>10.4f} {:>10.4f} {:>6}\n", name, p.mean, p.ci_low, p.ci_high, p.replications);
  };
  line("in_group", g.in_group);
  line("out_group", g.out_group);
  line("overall", g.overall);
  fmt::print("absolute gap {:.4f}, relative gap {:.4f}{}\n", g.absolute_gap, g.relative_gap,
             g.undefined ? " (some replication had an empty group)" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurricane power-outage hardship simulator"};
  app.require_subcommand(1);
  const unsigned env_workers = default_workers();

  auto* gen = app.add_subcommand("generate-network", "Build the synthetic grid for a scenario and save it as JSON");
  std::string gen_config, gen_out, gen_tracts_out, gen_marginals_out;
  gen->add_option("--config", gen_config, "Scenario JSON (defaults when omitted)");
  gen->add_option("--out", gen_out, "Output grid JSON")->required();
  gen->add_option("--tracts-out", gen_tracts_out, "Also write the tract CSV");
  gen->add_option("--marginals-out", gen_marginals_out, "Also write the tract marginals CSV");

  auto* run = app.add_subcommand("run", "Run Monte Carlo replications of one scenario");
  std::string run_scenario, run_reps = "auto", run_out;
  std::optional<std::uint64_t> run_seed;
  unsigned run_workers = env_workers;
  run->add_option("--scenario", run_scenario, "Scenario JSON (defaults when omitted)");
  run->add_option("--seed", run_seed, "Master seed (overrides the scenario)");
  run->add_option("--reps", run_reps, "'auto' for the stopping rule, or a fixed count");
  run->add_option("--workers", run_workers, "Worker threads (default: GRIDSHOCK_WORKERS or 1)");
  run->add_option("--out", run_out, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Run every cell of a scenario grid");
  std::string sweep_grid, sweep_out;
  unsigned sweep_workers = env_workers;
  bool sweep_keep = false;
  sweep->add_option("--grid", sweep_grid, "Sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_option("--workers", sweep_workers, "Worker threads (default: GRIDSHOCK_WORKERS or 1)");
  sweep->add_flag("--keep-runs", sweep_keep, "Also write each cell's run outputs under runs/<cell>");

  auto* report = app.add_subcommand("report", "Group hardship statistics and scenario comparison");
  std::vector<std::string> report_in;
  std::string report_group = "racial_minority", report_baseline, report_out, report_format = "csv";
  report->add_option("--in", report_in, "Run output directory (repeatable)")->required();
  report->add_option("--group", report_group, "Household attribute to split on");
  report->add_option("--baseline", report_baseline, "Scenario name to compare against");
  report->add_option("--out", report_out, "Write the comparison table here");
  report->add_option("--format", report_format, "csv or json");

  auto* def = app.add_subcommand("default-scenario", "Write the default scenario JSON");
  std::string def_out;
  def->add_option("--out", def_out, "Output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto scenario = scenario_or_default(gen_config);
      const auto world = build_world(scenario);
      save_grid(world.grid, gen_out);
      if (!gen_tracts_out.empty()) write_tracts(world.tracts, gen_tracts_out);
      if (!gen_marginals_out.empty()) write_marginals(world.marginals, gen_marginals_out);
      const auto& g = world.grid;
      fmt::print("grid: {} generators, {} substations, {} transmission elements, {} distribution elements\n",
                 g.generators().size(), g.substations().size(), g.transmission_count(),
                 g.distribution_element_count());
    } else if (*run) {
      auto scenario = scenario_or_default(run_scenario);
      if (run_seed) scenario.seed = *run_seed;
      const auto aggregate = run_monte_carlo(scenario, run_workers, parse_reps(run_reps));
      write_run_outputs(aggregate, run_out);
      fmt::print("{}: {} replications, peak hardship {:.4f} [{:.4f}, {:.4f}], restoration day {:.1f}\n",
                 aggregate.scenario_name, aggregate.count(), aggregate.peak_mean, aggregate.peak_ci_low,
                 aggregate.peak_ci_high, aggregate.restoration_day_mean);
      if (!aggregate.converged) {
        fmt::print(stderr, "warning: stopping rule not met after {} replications\n", aggregate.count());
      }
    } else if (*sweep) {
      const auto spec = load_sweep(sweep_grid);
      const fs::path out(sweep_out);
      const auto table = run_sweep(spec, sweep_workers, [&](const Scenario& s, const Aggregate& a) {
        fmt::print("{}: {} replications, peak {:.4f}\n", s.name, a.count(), a.peak_mean);
        if (sweep_keep) write_run_outputs(a, out / "runs" / s.name);
      });
      export_table(table, Format::Csv, out / "sweep.csv");
      export_table(table, Format::Json, out / "sweep.json");
    } else if (*report) {
      const auto format = parse_format(report_format);
      std::vector<Aggregate> aggregates;
      for (const auto& dir : report_in) aggregates.push_back(load_run_outputs(dir));
      for (const auto& a : aggregates) {
        fmt::print("== {} ({} replications)\n", a.scenario_name, a.count());
        print_group(group_hardship_probability(a, report_group));
      }
      if (!report_baseline.empty() || aggregates.size() > 1) {
        const std::string baseline = report_baseline.empty() ? aggregates.front().scenario_name : report_baseline;
        const auto table = compare_scenarios(aggregates, baseline, report_group);
        if (report_out.empty()) std::cout << render_table(table, format);
        else export_table(table, format, report_out);
      }
    } else if (*def) {
      std::ofstream out(def_out);
      if (!out) throw Error(ErrorCode::Io, "cannot write " + def_out);
      out << scenario_to_json(scenario_or_default("")).dump(2) << '\n';
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
