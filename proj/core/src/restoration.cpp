#include "gridshock/restoration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "csv.hpp"
#include "gridshock/error.hpp"

namespace gridshock {

void ResourceProfile::validate() const {
  if (!(initial_teams >= 0.0 && growth_per_hour >= 0.0 && growth_horizon_h >= 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "resource profile values must be >= 0");
  }
}

double resource_level(double t_h, const ResourceProfile& profile) {
  if (t_h < 0.0) throw Error(ErrorCode::InvalidParameter, "resource_level: t < 0");
  return profile.initial_teams + profile.growth_per_hour * std::min(t_h, profile.growth_horizon_h);
}

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::Component: return "component";
    case Strategy::Population: return "population";
    case Strategy::Svi: return "svi";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "component") return Strategy::Component;
  if (name == "population") return Strategy::Population;
  if (name == "svi") return Strategy::Svi;
  throw Error(ErrorCode::UnknownStrategy, "unknown restoration strategy '" + std::string(name) + "'");
}

const RepairClass& RepairTable::lookup(ComponentClass cls, DamageTier tier) const {
  switch (cls) {
    case ComponentClass::Substation:
      switch (tier) {
        case DamageTier::Complete: return substation[2];
        case DamageTier::Severe: return substation[1];
        default: return substation[0];
      }
    case ComponentClass::TransmissionTower: return tower;
    case ComponentClass::TransmissionLine: return line;
    case ComponentClass::Pole: return pole;
    case ComponentClass::Conductor: return conductor;
  }
  return pole;
}

void RepairTable::validate() const {
  auto check = [](const RepairClass& r) {
    if (!(r.mean_h > 0.0 && r.sd_h >= 0.0 && r.teams >= 0)) {
      throw Error(ErrorCode::InvalidParameter, "repair class needs mean > 0, sd >= 0, teams >= 0");
    }
  };
  for (const auto& r : substation) check(r);
  check(tower);
  check(line);
  check(pole);
  check(conductor);
  if (!(min_duration_h > 0.0)) throw Error(ErrorCode::InvalidParameter, "min_duration_h must be > 0");
}

namespace {

int severity(DamageTier t) {
  switch (t) {
    case DamageTier::Complete: return 3;
    case DamageTier::Severe: return 2;
    case DamageTier::Moderate: return 1;
    default: return 0;
  }
}

bool is_backbone(ComponentClass c) {
  return c == ComponentClass::Substation || c == ComponentClass::TransmissionTower ||
         c == ComponentClass::TransmissionLine;
}

}  // namespace

std::vector<ComponentId> plan_priorities(Strategy strategy, const Grid& grid, const DamageState& damage,
                                         std::span<const Tract> tracts, Rng& rng) {
  const auto& comps = grid.components();
  if (damage.status.size() != comps.size()) throw Error(ErrorCode::InvalidParameter, "damage state does not match grid");

  std::vector<ComponentId> substations, transmission;
  for (ComponentId c = 0; c < comps.size(); ++c) {
    if (!damage.status[c].failed) continue;
    if (comps[c].cls == ComponentClass::Substation) substations.push_back(c);
    else if (is_backbone(comps[c].cls)) transmission.push_back(c);
  }
  // Distribution in chain order: each pole's upstream conductor, then the pole.
  std::vector<ComponentId> distribution;
  for (NodeId p : grid.poles()) {
    const auto& node = grid.nodes()[p];
    const ComponentId cond = grid.edges()[node.upstream].parts[0];
    if (damage.status[cond].failed) distribution.push_back(cond);
    if (damage.status[node.component].failed) distribution.push_back(node.component);
  }

  auto by_severity = [&](ComponentId a, ComponentId b) {
    return severity(damage.status[a].tier) > severity(damage.status[b].tier);
  };
  std::vector<ComponentId> out;
  out.reserve(substations.size() + transmission.size() + distribution.size());

  if (strategy == Strategy::Component) {
    std::stable_sort(substations.begin(), substations.end(), by_severity);
    std::shuffle(distribution.begin(), distribution.end(), rng.engine());
    out.insert(out.end(), substations.begin(), substations.end());
    out.insert(out.end(), transmission.begin(), transmission.end());
    out.insert(out.end(), distribution.begin(), distribution.end());
    return out;
  }

  std::unordered_map<std::string, const Tract*> by_id;
  for (const auto& t : tracts) by_id.emplace(t.id, &t);
  const auto& ids = grid.tract_ids();
  std::vector<double> key(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = by_id.find(ids[i]);
    if (it == by_id.end()) throw Error(ErrorCode::TractMismatch, "no tract data for " + ids[i]);
    key[i] = strategy == Strategy::Population ? it->second->population : it->second->svi;
  }
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return ids[a] < ids[b];
  });
  std::vector<std::size_t> rank(ids.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  // Backbone: for each tract in rank order, queue the damaged components on the
  // cheapest generator path to each substation feeding it, where cost counts
  // damaged components not yet queued. Leftovers follow in component order.
  const auto& nodes = grid.nodes();
  const auto& edges = grid.edges();
  std::vector<NodeId> root(nodes.size(), kNone);
  std::vector<std::vector<NodeId>> feeds(ids.size());
  for (NodeId p : grid.poles()) {
    const auto& e = edges[nodes[p].upstream];
    const NodeId up = e.a == p ? e.b : e.a;
    root[p] = nodes[up].kind == NodeKind::Pole ? root[up] : up;
    auto& f = feeds[nodes[p].tract];
    if (root[p] != kNone && std::find(f.begin(), f.end(), root[p]) == f.end()) f.push_back(root[p]);
  }
  for (NodeId sub : grid.substations()) {
    auto& f = feeds[nodes[sub].tract];
    if (std::find(f.begin(), f.end(), sub) == f.end()) f.push_back(sub);
  }

  std::vector<char> queued(comps.size(), 0);
  auto pending_cost = [&](ComponentId c) {
    return c != kNone && damage.status[c].failed && !queued[c] ? 1 : 0;
  };
  auto enqueue = [&](ComponentId c) {
    if (pending_cost(c)) {
      queued[c] = 1;
      out.push_back(c);
    }
  };
  constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(nodes.size());
  std::vector<EdgeId> via(nodes.size());
  using Entry = std::pair<std::uint32_t, NodeId>;
  for (std::size_t t : order) {
    std::sort(feeds[t].begin(), feeds[t].end());
    for (NodeId target : feeds[t]) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), kNone);
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
      for (NodeId g : grid.generators()) {
        dist[g] = 0;
        heap.emplace(0, g);
      }
      while (!heap.empty()) {
        const auto [d, n] = heap.top();
        heap.pop();
        if (d != dist[n] || n == target) continue;
        for (const auto& inc : grid.incident(n)) {
          const auto& e = edges[inc.edge];
          if (e.kind != EdgeKind::Transmission) continue;
          const auto nd = d + pending_cost(e.parts[0]) + pending_cost(e.parts[1]) +
                          pending_cost(nodes[inc.other].component);
          if (nd < dist[inc.other]) {
            dist[inc.other] = nd;
            via[inc.other] = inc.edge;
            heap.emplace(nd, inc.other);
          }
        }
      }
      if (dist[target] == kInf) continue;
      std::vector<NodeId> path{target};
      while (via[path.back()] != kNone) {
        const auto& e = edges[via[path.back()]];
        path.push_back(e.a == path.back() ? e.b : e.a);
      }
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (via[*it] != kNone) {
          enqueue(edges[via[*it]].parts[0]);
          enqueue(edges[via[*it]].parts[1]);
        }
        enqueue(nodes[*it].component);
      }
    }
  }
  std::stable_sort(substations.begin(), substations.end(), by_severity);
  for (ComponentId c : substations) enqueue(c);
  for (ComponentId c : transmission) enqueue(c);

  std::stable_sort(distribution.begin(), distribution.end(),
                   [&](ComponentId a, ComponentId b) { return rank[comps[a].tract] < rank[comps[b].tract]; });
  out.insert(out.end(), distribution.begin(), distribution.end());
  return out;
}

std::vector<RepairTask> make_repair_tasks(const Grid& grid, const DamageState& damage, const RepairTable& table,
                                          Rng& rng) {
  table.validate();
  std::vector<RepairTask> tasks;
  for (ComponentId c = 0; c < damage.status.size(); ++c) {
    const auto& s = damage.status[c];
    if (!s.failed) continue;
    const auto cls = grid.components()[c].cls;
    const auto& rc = table.lookup(cls, s.tier);
    const double d = rc.sd_h > 0.0 ? rng.truncated_normal(rc.mean_h, rc.sd_h, table.min_duration_h)
                                    : std::max(table.min_duration_h, rc.mean_h);
    tasks.push_back({c, cls, d, rc.teams});
  }
  return tasks;
}

double RepairSchedule::makespan_end_h() const {
  double end = restoration_start_h;
  for (const auto& r : repairs) end = std::max(end, r.end_h);
  return end;
}

int RepairSchedule::teams_in_use(double t_h) const {
  int total = 0;
  for (const auto& r : repairs) {
    if (r.start_h <= t_h && t_h < r.release_h) total += r.teams;
  }
  return total;
}

RepairSchedule schedule_repairs(std::span<const RepairTask> tasks, std::span<const ComponentId> priorities,
                                const ResourceProfile& profile, double restoration_start_h) {
  profile.validate();
  std::unordered_map<ComponentId, std::size_t> task_of;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!task_of.emplace(tasks[i].component, i).second) {
      throw Error(ErrorCode::DuplicateEntry, "two repair tasks for component " + std::to_string(tasks[i].component));
    }
  }
  std::vector<std::size_t> pending;
  std::vector<char> listed(tasks.size(), 0);
  for (ComponentId c : priorities) {
    auto it = task_of.find(c);
    if (it == task_of.end()) continue;  // undamaged components need no repair
    if (listed[it->second]) throw Error(ErrorCode::DuplicateEntry, "component listed twice in priorities");
    listed[it->second] = 1;
    pending.push_back(it->second);
  }
  if (pending.size() != tasks.size()) {
    throw Error(ErrorCode::InvalidParameter, "priority list does not cover every damaged component");
  }
  const auto cap = static_cast<long long>(std::floor(profile.cap() + 1e-9));
  for (const auto& t : tasks) {
    if (t.teams > cap) {
      throw Error(ErrorCode::InfeasibleTask, "component " + std::to_string(t.component) + " needs " +
                                                 std::to_string(t.teams) + " teams, pool never exceeds " +
                                                 std::to_string(cap));
    }
    if (!(t.duration_h > 0.0)) throw Error(ErrorCode::InvalidParameter, "repair duration must be > 0");
  }

  RepairSchedule schedule;
  schedule.restoration_start_h = restoration_start_h;
  schedule.repairs.reserve(tasks.size());

  using Release = std::pair<long long, int>;  // (hour, teams)
  std::priority_queue<Release, std::vector<Release>, std::greater<>> running;
  long long in_use = 0;
  std::vector<std::size_t> still;
  std::vector<std::size_t> rank_of(tasks.size());
  for (std::size_t k = 0; k < pending.size(); ++k) rank_of[pending[k]] = k;

  for (long long hour = 0; !pending.empty(); ++hour) {
    while (!running.empty() && running.top().first <= hour) {
      in_use -= running.top().second;
      running.pop();
    }
    const auto level = static_cast<long long>(std::floor(resource_level(static_cast<double>(hour), profile) + 1e-9));
    long long free = level - in_use;
    if (free <= 0 && !running.empty()) continue;
    still.clear();
    for (std::size_t idx : pending) {
      const auto& t = tasks[idx];
      if (t.teams <= free) {
        free -= t.teams;
        in_use += t.teams;
        const double start = static_cast<double>(hour);
        const double end = start + t.duration_h;
        const auto release = static_cast<long long>(std::ceil(end - 1e-12));
        running.emplace(release, t.teams);
        schedule.repairs.push_back({t.component, t.cls, restoration_start_h + start, restoration_start_h + end,
                                    restoration_start_h + static_cast<double>(release), t.teams, rank_of[idx]});
      } else {
        still.push_back(idx);
      }
    }
    pending.swap(still);
  }
  std::stable_sort(schedule.repairs.begin(), schedule.repairs.end(),
                   [](const auto& a, const auto& b) { return a.priority < b.priority; });
  return schedule;
}

RepairSchedule schedule_repairs(const Grid& grid, const DamageState& damage, std::span<const ComponentId> priorities,
                                const RepairTable& table, const ResourceProfile& profile, double restoration_start_h,
                                Rng& rng) {
  const auto tasks = make_repair_tasks(grid, damage, table, rng);
  return schedule_repairs(tasks, priorities, profile, restoration_start_h);
}

std::vector<Outage> compute_outages(const Grid& grid, const DamageState& damage, const RepairSchedule& schedule) {
  const auto n_nodes = grid.nodes().size();
  std::vector<Outage> out(n_nodes);
  std::vector<std::uint8_t> failed(grid.components().size(), 0);

  std::map<double, std::vector<ComponentId>> failures;
  for (ComponentId c = 0; c < damage.status.size(); ++c) {
    if (damage.status[c].failed) failures[damage.status[c].fail_time_h].push_back(c);
  }
  if (failures.empty()) return out;

  auto mark_dark = [&](double t) {
    const auto state = propagate_connectivity(grid, failed);
    for (NodeId n = 0; n < n_nodes; ++n) {
      if (!state.node_energized[n] && !out[n].affected) {
        out[n].affected = true;
        out[n].start_h = t;
        out[n].end_h = kNever;
      }
    }
  };
  for (const auto& [t, comps] : failures) {
    for (ComponentId c : comps) failed[c] = 1;
    mark_dark(t);
  }

  std::map<double, std::vector<ComponentId>> completions;
  for (const auto& r : schedule.repairs) completions[r.end_h].push_back(r.component);
  for (const auto& [t, comps] : completions) {
    for (ComponentId c : comps) failed[c] = 0;
    const auto state = propagate_connectivity(grid, failed);
    for (NodeId n = 0; n < n_nodes; ++n) {
      if (out[n].affected && out[n].end_h == kNever && state.node_energized[n]) out[n].end_h = t;
    }
  }
  return out;
}

void write_schedule_csv(const RepairSchedule& schedule, const std::filesystem::path& path) {
  auto out = csv::open_for_write(path);
  out << "component_id,class,start_h,end_h,teams\n";
  for (const auto& r : schedule.repairs) {
    out << r.component << ',' << to_string(r.cls) << ',' << csv::sig15(r.start_h) << ',' << csv::sig15(r.end_h) << ','
        << r.teams << '\n';
  }
}

}  // namespace gridshock
