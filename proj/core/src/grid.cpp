#include "gridshock/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

#include "gridshock/error.hpp"

namespace gridshock {

std::string_view to_string(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::Generator: return "generator";
    case NodeKind::Substation: return "substation";
    case NodeKind::Pole: return "pole";
  }
  return "?";
}

std::string_view to_string(EdgeKind k) noexcept {
  return k == EdgeKind::Transmission ? "transmission" : "conductor";
}

std::string_view to_string(ComponentClass c) noexcept {
  switch (c) {
    case ComponentClass::Substation: return "substation";
    case ComponentClass::TransmissionTower: return "transmission_tower";
    case ComponentClass::TransmissionLine: return "transmission_line";
    case ComponentClass::Pole: return "pole";
    case ComponentClass::Conductor: return "conductor";
  }
  return "?";
}

Grid::Grid(std::vector<std::string> tract_ids) : tract_ids_(std::move(tract_ids)) {}

std::uint32_t Grid::check_tract(std::uint32_t tract) const {
  if (tract >= tract_ids_.size()) throw Error(ErrorCode::UnknownTract, "tract index " + std::to_string(tract));
  return tract;
}

ComponentId Grid::add_component(ComponentClass cls, std::uint32_t tract, std::uint32_t tract_b, bool on_edge,
                                std::uint32_t owner) {
  components_.push_back(Component{cls, tract, tract_b, on_edge, owner});
  return static_cast<ComponentId>(components_.size() - 1);
}

void Grid::link(NodeId a, NodeId b, EdgeId e) {
  adjacency_[a].push_back({e, b});
  adjacency_[b].push_back({e, a});
}

NodeId Grid::add_generator(std::uint32_t tract, Point pos) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{NodeKind::Generator, check_tract(tract), pos});
  adjacency_.emplace_back();
  generators_.push_back(id);
  return id;
}

NodeId Grid::add_substation(std::uint32_t tract, Point pos) {
  const auto id = static_cast<NodeId>(nodes_.size());
  Node n{NodeKind::Substation, check_tract(tract), pos};
  n.component = add_component(ComponentClass::Substation, tract, tract, false, id);
  nodes_.push_back(n);
  adjacency_.emplace_back();
  substations_.push_back(id);
  return id;
}

NodeId Grid::add_pole(std::uint32_t tract, Point pos, std::uint32_t feeder) {
  const auto id = static_cast<NodeId>(nodes_.size());
  Node n{NodeKind::Pole, check_tract(tract), pos};
  n.component = add_component(ComponentClass::Pole, tract, tract, false, id);
  n.feeder = feeder;
  nodes_.push_back(n);
  adjacency_.emplace_back();
  poles_.push_back(id);
  return id;
}

EdgeId Grid::add_transmission(NodeId a, NodeId b, double length_km, std::uint32_t n_towers) {
  if (a >= nodes_.size() || b >= nodes_.size() || a == b) {
    throw Error(ErrorCode::InvalidParameter, "transmission endpoints invalid");
  }
  for (NodeId n : {a, b}) {
    if (nodes_[n].kind == NodeKind::Pole) throw Error(ErrorCode::InvalidParameter, "transmission cannot touch a pole");
  }
  if (n_towers == 0) throw Error(ErrorCode::InvalidParameter, "transmission element needs at least one tower");
  const auto id = static_cast<EdgeId>(edges_.size());
  Edge e{EdgeKind::Transmission, a, b, length_km, n_towers};
  const auto ta = nodes_[a].tract, tb = nodes_[b].tract;
  e.parts[0] = add_component(ComponentClass::TransmissionTower, ta, tb, true, id);
  e.parts[1] = add_component(ComponentClass::TransmissionLine, ta, tb, true, id);
  edges_.push_back(e);
  link(a, b, id);
  ++transmission_count_;
  return id;
}

EdgeId Grid::add_conductor(NodeId upstream, NodeId pole) {
  if (upstream >= nodes_.size() || pole >= nodes_.size() || upstream == pole) {
    throw Error(ErrorCode::InvalidParameter, "conductor endpoints invalid");
  }
  auto& p = nodes_[pole];
  if (p.kind != NodeKind::Pole) throw Error(ErrorCode::InvalidParameter, "conductor must end at a pole");
  if (p.upstream != kNone) throw Error(ErrorCode::InvalidParameter, "pole already has an upstream conductor");
  const auto up_kind = nodes_[upstream].kind;
  if (up_kind == NodeKind::Generator) throw Error(ErrorCode::InvalidParameter, "conductor cannot start at a generator");
  const auto id = static_cast<EdgeId>(edges_.size());
  Edge e{EdgeKind::Conductor, upstream, pole, distance_km(nodes_[upstream].pos, p.pos), 0};
  e.parts[0] = add_component(ComponentClass::Conductor, p.tract, p.tract, true, id);
  edges_.push_back(e);
  p.upstream = id;
  link(upstream, pole, id);
  return id;
}

void Grid::validate() const {
  for (NodeId p : poles_) {
    NodeId cur = p;
    std::size_t steps = 0;
    while (nodes_[cur].kind == NodeKind::Pole) {
      const auto up = nodes_[cur].upstream;
      if (up == kNone) throw Error(ErrorCode::CannotConnect, "pole " + std::to_string(p) + " has no upstream conductor");
      cur = edges_[up].a;
      if (++steps > poles_.size()) throw Error(ErrorCode::CannotConnect, "pole chain cycle at " + std::to_string(p));
    }
    if (nodes_[cur].kind != NodeKind::Substation) {
      throw Error(ErrorCode::CannotConnect, "pole " + std::to_string(p) + " does not reach a substation");
    }
  }
  std::vector<char> seen(nodes_.size(), 0);
  std::queue<NodeId> q;
  for (NodeId g : generators_) {
    seen[g] = 1;
    q.push(g);
  }
  while (!q.empty()) {
    NodeId n = q.front();
    q.pop();
    for (const auto& inc : adjacency_[n]) {
      if (!seen[inc.other]) {
        seen[inc.other] = 1;
        q.push(inc.other);
      }
    }
  }
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    if (!seen[n]) {
      throw Error(ErrorCode::CannotConnect,
                  std::string(to_string(nodes_[n].kind)) + " " + std::to_string(n) + " is not connected to a generator");
    }
  }
}

void GridCounts::validate() const {
  if (n_substations == 0 || n_transmission == 0 || n_generators == 0 || poles_per_feeder == 0) {
    throw Error(ErrorCode::InvalidParameter, "grid counts must be positive");
  }
  if (!(customer_per_pole > 0.0) || !(tower_spacing_km > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "customer_per_pole and tower_spacing_km must be positive");
  }
  if (n_transmission + 1 < n_substations + n_generators) {
    throw Error(ErrorCode::CannotConnect, std::to_string(n_transmission) + " transmission elements cannot connect " +
                                              std::to_string(n_substations + n_generators) + " nodes");
  }
  const std::uint64_t nodes = std::uint64_t{n_substations} + n_generators;
  if (n_transmission > nodes * (nodes - 1) / 2) {
    throw Error(ErrorCode::InvalidParameter, "more transmission elements than node pairs");
  }
}

std::uint32_t tower_count(double length_km, double spacing_km) {
  if (!(spacing_km > 0.0)) throw Error(ErrorCode::InvalidParameter, "tower spacing must be > 0");
  const double ratio = length_km / spacing_km;
  // Quotients such as 2.3 / 0.23 land a few ulps above the integer.
  const double n = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(n));
}

std::uint32_t pole_count_for(double households, double customer_per_pole) {
  if (!(customer_per_pole > 0.0)) throw Error(ErrorCode::InvalidParameter, "customer_per_pole must be > 0");
  if (households <= 0.0) return 0;
  const double ratio = households / customer_per_pole;
  return static_cast<std::uint32_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
}

namespace {

/// Largest-remainder apportionment of `total` seats by `weights`.
std::vector<std::uint32_t> apportion(std::span<const double> weights, std::uint32_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::uint32_t> seats(weights.size(), 0);
  if (sum <= 0.0 || weights.empty()) return seats;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::uint32_t given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double quota = total * weights[i] / sum;
    seats[i] = static_cast<std::uint32_t>(std::floor(quota));
    given += seats[i];
    remainders.emplace_back(quota - seats[i], i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  for (std::size_t k = 0; given < total && k < remainders.size(); ++k, ++given) ++seats[remainders[k].second];
  return seats;
}

std::uint32_t nearest_tract(std::span<const Tract> tracts, Point p) {
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < tracts.size(); ++i) {
    const double d = distance_km(tracts[i].centroid, p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

Grid build_synthetic_grid(std::span<const Tract> tracts, const GridCounts& counts, Rng& rng) {
  if (tracts.empty()) throw Error(ErrorCode::EmptyInput, "no tracts");
  counts.validate();
  for (const auto& t : tracts) validate(t);

  std::vector<std::string> ids;
  for (const auto& t : tracts) ids.push_back(t.id);
  Grid grid(std::move(ids));

  // Generators sit near randomly chosen tract centroids; substations are
  // apportioned to tracts by population.
  std::vector<NodeId> backbone;
  for (std::uint32_t g = 0; g < counts.n_generators; ++g) {
    const auto& anchor = tracts[rng.index(0, tracts.size() - 1)];
    Point p{anchor.centroid.x_km + rng.uniform(-5.0, 5.0), anchor.centroid.y_km + rng.uniform(-5.0, 5.0)};
    backbone.push_back(grid.add_generator(nearest_tract(tracts, p), p));
  }
  std::vector<double> weights;
  for (const auto& t : tracts) weights.push_back(t.population);
  if (std::accumulate(weights.begin(), weights.end(), 0.0) <= 0.0) std::fill(weights.begin(), weights.end(), 1.0);
  const auto seats = apportion(weights, counts.n_substations);
  const double jitter = counts.substation_jitter_km;
  for (std::uint32_t t = 0; t < tracts.size(); ++t) {
    for (std::uint32_t s = 0; s < seats[t]; ++s) {
      Point p{tracts[t].centroid.x_km + rng.uniform(-jitter, jitter),
              tracts[t].centroid.y_km + rng.uniform(-jitter, jitter)};
      backbone.push_back(grid.add_substation(t, p));
    }
  }

  // Euclidean minimum spanning tree (Prim), then the shortest remaining
  // pairs until the transmission count is met.
  const std::size_t nb = backbone.size();
  auto len = [&](std::size_t i, std::size_t j) {
    return distance_km(grid.nodes()[backbone[i]].pos, grid.nodes()[backbone[j]].pos);
  };
  std::vector<char> in_tree(nb, 0);
  std::vector<double> best(nb, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(nb, nb);
  std::vector<std::vector<char>> linked(nb, std::vector<char>(nb, 0));
  best[0] = 0.0;
  for (std::size_t step = 0; step < nb; ++step) {
    std::size_t u = nb;
    for (std::size_t i = 0; i < nb; ++i) {
      if (!in_tree[i] && (u == nb || best[i] < best[u])) u = i;
    }
    in_tree[u] = 1;
    if (parent[u] != nb) {
      const double l = len(parent[u], u);
      grid.add_transmission(backbone[parent[u]], backbone[u], l, tower_count(l, counts.tower_spacing_km));
      linked[parent[u]][u] = linked[u][parent[u]] = 1;
    }
    for (std::size_t v = 0; v < nb; ++v) {
      if (!in_tree[v]) {
        const double l = len(u, v);
        if (l < best[v]) {
          best[v] = l;
          parent[v] = u;
        }
      }
    }
  }
  std::vector<std::tuple<double, std::size_t, std::size_t>> extra;
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = i + 1; j < nb; ++j) {
      if (!linked[i][j]) extra.emplace_back(len(i, j), i, j);
    }
  }
  std::sort(extra.begin(), extra.end());
  for (std::size_t k = 0; grid.transmission_count() < counts.n_transmission && k < extra.size(); ++k) {
    const auto [l, i, j] = extra[k];
    grid.add_transmission(backbone[i], backbone[j], l, tower_count(l, counts.tower_spacing_km));
  }

  // Distribution: radial feeders from the nearest substation (ties by
  // lowest id) toward the tract centroid.
  std::uint32_t feeder_id = 0;
  for (std::uint32_t t = 0; t < tracts.size(); ++t) {
    const std::uint32_t n_poles = pole_count_for(tracts[t].population, counts.customer_per_pole);
    if (n_poles == 0) continue;
    NodeId sub = kNone;
    double sub_d = std::numeric_limits<double>::infinity();
    for (NodeId s : grid.substations()) {
      const double d = distance_km(grid.nodes()[s].pos, tracts[t].centroid);
      if (d < sub_d) {
        sub_d = d;
        sub = s;
      }
    }
    const Point origin = grid.nodes()[sub].pos;
    const Point target = tracts[t].centroid;
    const std::uint32_t n_feeders = (n_poles + counts.poles_per_feeder - 1) / counts.poles_per_feeder;
    const double base_angle = sub_d > 1e-9 ? std::atan2(target.y_km - origin.y_km, target.x_km - origin.x_km) : 0.0;
    const double reach = std::max(sub_d, 0.5);
    std::uint32_t placed = 0;
    for (std::uint32_t f = 0; f < n_feeders; ++f, ++feeder_id) {
      const std::uint32_t len_f = std::min(counts.poles_per_feeder, n_poles - placed);
      const double angle = base_angle + (static_cast<double>(f) - 0.5 * (n_feeders - 1)) * 0.35;
      NodeId upstream = sub;
      for (std::uint32_t k = 0; k < len_f; ++k) {
        const double r = reach * (k + 1) / len_f;
        Point p{origin.x_km + r * std::cos(angle), origin.y_km + r * std::sin(angle)};
        NodeId pole = grid.add_pole(t, p, feeder_id);
        grid.add_conductor(upstream, pole);
        upstream = pole;
      }
      placed += len_f;
    }
  }
  grid.validate();
  return grid;
}

}  // namespace gridshock
