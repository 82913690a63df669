#include "gridshock/damage.hpp"

#include <algorithm>
#include <queue>

#include "gridshock/error.hpp"

namespace gridshock {

std::string_view to_string(DamageTier t) noexcept {
  switch (t) {
    case DamageTier::None: return "none";
    case DamageTier::Moderate: return "moderate";
    case DamageTier::Severe: return "severe";
    case DamageTier::Complete: return "complete";
    case DamageTier::Failed: return "failed";
  }
  return "?";
}

std::size_t DamageState::failed_count() const {
  return static_cast<std::size_t>(std::count_if(status.begin(), status.end(), [](const auto& s) { return s.failed; }));
}

std::array<std::size_t, kComponentClassCount> DamageState::failed_by_class(const Grid& grid) const {
  std::array<std::size_t, kComponentClassCount> out{};
  for (ComponentId c = 0; c < status.size(); ++c) {
    if (status[c].failed) ++out[static_cast<std::size_t>(grid.components()[c].cls)];
  }
  return out;
}

std::vector<std::uint8_t> DamageState::failed_flags() const {
  std::vector<std::uint8_t> out(status.size());
  for (std::size_t i = 0; i < status.size(); ++i) out[i] = status[i].failed ? 1 : 0;
  return out;
}

std::vector<std::size_t> map_tracts(const Grid& grid, const WindField& field) {
  std::vector<std::size_t> rows;
  rows.reserve(grid.tract_ids().size());
  for (const auto& id : grid.tract_ids()) {
    const auto r = field.find(id);
    if (r == WindField::npos) throw Error(ErrorCode::TractMismatch, "wind field has no series for grid tract " + id);
    rows.push_back(r);
  }
  return rows;
}

double failure_probability(const Grid& grid, ComponentId c, double w, const FragilityParams& params) {
  const auto& comp = grid.components()[c];
  switch (comp.cls) {
    case ComponentClass::Substation: return params.substation[0](w);
    case ComponentClass::TransmissionTower:
      return transmission_element_fragility(w, grid.edges()[comp.owner].n_towers, params.tower);
    case ComponentClass::TransmissionLine: return line_fragility(w, params.line_critical_ms, params.line_collapse_ms);
    case ComponentClass::Pole: return params.pole(w);
    case ComponentClass::Conductor: return conductor_fragility(w, params.conductor_a, params.conductor_b);
  }
  return 0.0;
}

namespace {

/// Substation tiers from a single draw: complete within severe within
/// moderate.
DamageTier substation_tier(double w, double r, const FragilityParams& params) {
  if (r < params.substation[2](w)) return DamageTier::Complete;
  if (r < params.substation[1](w)) return DamageTier::Severe;
  if (r < params.substation[0](w)) return DamageTier::Moderate;
  return DamageTier::None;
}

struct Exposure {
  const WindField& field;
  std::vector<std::size_t> rows;

  double at(const Component& c, int hour) const {
    const double a = field.at(rows[c.tract], hour);
    return c.tract_b == c.tract ? a : std::max(a, field.at(rows[c.tract_b], hour));
  }
};

}  // namespace

DamageState sample_damage(const Grid& grid, const WindField& field, const FragilityParams& params, DamageMode mode,
                          const UniformSource& uniform) {
  params.validate();
  Exposure exposure{field, map_tracts(grid, field)};
  const auto& comps = grid.components();
  DamageState state;
  state.status.resize(comps.size());

  auto trial = [&](ComponentId c, double w, double hour) {
    const double r = uniform();
    auto& s = state.status[c];
    if (comps[c].cls == ComponentClass::Substation) {
      const auto tier = substation_tier(w, r, params);
      if (tier != DamageTier::None) s = {true, tier, hour};
    } else if (r < failure_probability(grid, c, w, params)) {
      s = {true, DamageTier::Failed, hour};
    }
  };

  if (mode == DamageMode::PeakWind) {
    for (ComponentId c = 0; c < comps.size(); ++c) {
      double peak = -1.0;
      int peak_hour = 0;
      for (int h = 0; h < field.duration_h(); ++h) {
        const double w = exposure.at(comps[c], h);
        if (w > peak) {
          peak = w;
          peak_hour = h;
        }
      }
      trial(c, std::max(peak, 0.0), peak_hour);
    }
  } else {
    for (int h = 0; h < field.duration_h(); ++h) {
      for (ComponentId c = 0; c < comps.size(); ++c) {
        if (!state.status[c].failed) trial(c, exposure.at(comps[c], h), h);
      }
    }
  }
  return state;
}

DamageState sample_damage(const Grid& grid, const WindField& field, const FragilityParams& params, DamageMode mode,
                          Rng& rng) {
  return sample_damage(grid, field, params, mode, [&rng] { return rng.uniform(); });
}

EnergizationState propagate_connectivity(const Grid& grid, const DamageState& damage) {
  return propagate_connectivity(grid, damage.failed_flags());
}

EnergizationState propagate_connectivity(const Grid& grid, std::span<const std::uint8_t> failed) {
  const auto& nodes = grid.nodes();
  const auto& edges = grid.edges();
  if (failed.size() != grid.components().size()) {
    throw Error(ErrorCode::InvalidParameter, "failure flags do not match the grid's components");
  }
  auto node_intact = [&](NodeId n) { return nodes[n].component == kNone || !failed[nodes[n].component]; };
  auto edge_intact = [&](EdgeId e) {
    for (ComponentId c : edges[e].parts) {
      if (c != kNone && failed[c]) return false;
    }
    return true;
  };

  EnergizationState out;
  out.node_energized.assign(nodes.size(), 0);
  out.component_energized.assign(grid.components().size(), 0);
  std::vector<NodeId> stack;
  for (NodeId g : grid.generators()) {
    out.node_energized[g] = 1;
    stack.push_back(g);
  }
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    for (const auto& inc : grid.incident(n)) {
      if (out.node_energized[inc.other] || !edge_intact(inc.edge) || !node_intact(inc.other)) continue;
      out.node_energized[inc.other] = 1;
      stack.push_back(inc.other);
    }
  }
  for (NodeId n = 0; n < nodes.size(); ++n) {
    if (nodes[n].component != kNone) out.component_energized[nodes[n].component] = out.node_energized[n];
  }
  for (EdgeId e = 0; e < edges.size(); ++e) {
    const bool live = edge_intact(e) && out.node_energized[edges[e].a] && out.node_energized[edges[e].b];
    for (ComponentId c : edges[e].parts) {
      if (c != kNone) out.component_energized[c] = live ? 1 : 0;
    }
  }
  return out;
}

std::vector<std::uint8_t> household_power(const EnergizationState& state, std::span<const NodeId> household_pole) {
  std::vector<std::uint8_t> out(household_pole.size());
  for (std::size_t h = 0; h < household_pole.size(); ++h) out[h] = state.node_energized[household_pole[h]];
  return out;
}

}  // namespace gridshock
