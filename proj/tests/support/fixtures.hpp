#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gridshock/coefficients.hpp"
#include "gridshock/damage.hpp"
#include "gridshock/grid.hpp"
#include "gridshock/hazard.hpp"
#include "gridshock/population.hpp"
#include "gridshock/scenario.hpp"

namespace gridshock::testing {

/// Small grid described by labels so a fixture can be rebuilt with its
/// nodes and edges inserted in any order.
struct GridSketch {
  struct NodeSpec {
    std::string name;
    NodeKind kind;
    std::uint32_t tract = 0;
  };
  struct EdgeSpec {
    std::string a;
    std::string b;
    EdgeKind kind;
  };
  std::vector<std::string> tracts{"T1"};
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;

  GridSketch& gen(const std::string& n, std::uint32_t tract = 0) {
    nodes.push_back({n, NodeKind::Generator, tract});
    return *this;
  }
  GridSketch& sub(const std::string& n, std::uint32_t tract = 0) {
    nodes.push_back({n, NodeKind::Substation, tract});
    return *this;
  }
  GridSketch& pole(const std::string& n, std::uint32_t tract = 0) {
    nodes.push_back({n, NodeKind::Pole, tract});
    return *this;
  }
  GridSketch& line(const std::string& a, const std::string& b) {
    edges.push_back({a, b, EdgeKind::Transmission});
    return *this;
  }
  /// Conductor from `up` (substation or pole) to pole `p`.
  GridSketch& wire(const std::string& up, const std::string& p) {
    edges.push_back({up, p, EdgeKind::Conductor});
    return *this;
  }
};

struct BuiltGrid {
  Grid grid{std::vector<std::string>{}};
  std::map<std::string, NodeId> node;
  /// Keyed "a-b" as written in the sketch.
  std::map<std::string, EdgeId> edge;

  ComponentId component(const std::string& n) const { return grid.nodes()[node.at(n)].component; }
  std::vector<ComponentId> edge_parts(const std::string& key) const {
    std::vector<ComponentId> out;
    for (auto c : grid.edges()[edge.at(key)].parts) {
      if (c != kNone) out.push_back(c);
    }
    return out;
  }
  std::vector<std::uint8_t> failed(const std::set<std::string>& nodes_down,
                                   const std::set<std::string>& edges_down = {}) const {
    std::vector<std::uint8_t> f(grid.components().size(), 0);
    for (const auto& n : nodes_down) f[component(n)] = 1;
    for (const auto& e : edges_down) {
      for (auto c : edge_parts(e)) f[c] = 1;
    }
    return f;
  }
  std::set<std::string> lit(const EnergizationState& s) const {
    std::set<std::string> out;
    for (const auto& [name, id] : node) {
      if (s.energized(id)) out.insert(name);
    }
    return out;
  }
};

/// Builds the sketch with node and edge insertion shuffled by `order_seed`
/// (0 keeps the written order). Pole conductors always follow their pole.
inline BuiltGrid build(const GridSketch& sketch, std::uint64_t order_seed = 0) {
  BuiltGrid out;
  out.grid = Grid(sketch.tracts);
  std::vector<std::size_t> nodes(sketch.nodes.size());
  std::iota(nodes.begin(), nodes.end(), 0);
  std::vector<std::size_t> edges(sketch.edges.size());
  std::iota(edges.begin(), edges.end(), 0);
  if (order_seed != 0) {
    std::mt19937_64 g(order_seed);
    std::shuffle(nodes.begin(), nodes.end(), g);
    std::shuffle(edges.begin(), edges.end(), g);
  }
  std::uint32_t feeder = 0;
  for (auto i : nodes) {
    const auto& n = sketch.nodes[i];
    const Point p{static_cast<double>(i), 0.0};
    NodeId id = 0;
    switch (n.kind) {
      case NodeKind::Generator: id = out.grid.add_generator(n.tract, p); break;
      case NodeKind::Substation: id = out.grid.add_substation(n.tract, p); break;
      case NodeKind::Pole: id = out.grid.add_pole(n.tract, p, feeder++); break;
    }
    out.node[n.name] = id;
  }
  for (auto i : edges) {
    const auto& e = sketch.edges[i];
    const auto a = out.node.at(e.a), b = out.node.at(e.b);
    out.edge[e.a + "-" + e.b] = e.kind == EdgeKind::Transmission ? out.grid.add_transmission(a, b, 1.0, 2)
                                                                 : out.grid.add_conductor(a, b);
  }
  return out;
}

// Hand-built cascade fixtures.
inline GridSketch radial() {
  return GridSketch{}.gen("G").sub("S1").sub("S2").pole("P1").pole("P2").pole("P3")
      .line("G", "S1").line("S1", "S2").wire("S2", "P1").wire("P1", "P2").wire("P2", "P3");
}

inline GridSketch ring() {
  return GridSketch{}.gen("G").sub("S1").sub("S2").sub("S3").sub("S4")
      .pole("P1").pole("P2").pole("P3").pole("P4")
      .line("G", "S1").line("S1", "S2").line("S2", "S3").line("S3", "S4").line("S4", "S1")
      .wire("S1", "P1").wire("S2", "P2").wire("S3", "P3").wire("S4", "P4");
}

inline GridSketch two_generators() {
  return GridSketch{}.gen("G1").gen("G2").sub("S1").sub("S2").sub("S3")
      .pole("P1").pole("P2").pole("P3")
      .line("G1", "S1").line("S1", "S2").line("S2", "S3").line("S3", "G2")
      .wire("S1", "P1").wire("S2", "P2").wire("S3", "P3");
}

inline GridSketch cut_vertex() {
  return GridSketch{}.gen("G").sub("S1").sub("S2").sub("S3").sub("S4")
      .pole("P2").pole("P3").pole("P4").pole("P5")
      .line("G", "S1").line("S1", "S2").line("S1", "S3").line("S2", "S4").line("S3", "S4")
      .wire("S2", "P2").wire("S3", "P3").wire("S4", "P4").wire("P4", "P5");
}

inline GridSketch small_chain() {
  return GridSketch{}.gen("G").sub("S1").sub("S2").pole("P1").pole("P2")
      .line("G", "S1").line("S1", "S2").wire("S2", "P1").wire("P1", "P2");
}

inline std::vector<GridSketch> all_fixtures() { return {radial(), ring(), two_generators(), cut_vertex(), small_chain()}; }

/// Reference reachability written independently of the library: repeated
/// relaxation over an explicit edge list until nothing changes.
inline std::set<std::string> reachable(const GridSketch& sketch, const std::set<std::string>& nodes_down,
                                       const std::set<std::string>& edges_down) {
  std::set<std::string> lit;
  for (const auto& n : sketch.nodes) {
    if (n.kind == NodeKind::Generator) lit.insert(n.name);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& e : sketch.edges) {
      if (edges_down.count(e.a + "-" + e.b)) continue;
      for (auto [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        if (lit.count(from) && !lit.count(to) && !nodes_down.count(to)) {
          lit.insert(to);
          grew = true;
        }
      }
    }
  }
  return lit;
}

inline Tract make_tract(const std::string& id, double x, double y, double population, double svi,
                        double flood = 0.0) {
  return Tract{id, Point{x, y}, population, svi, flood};
}

inline TractMarginals flat_marginals(const std::string& id, double share = 0.5) {
  TractMarginals m;
  m.tract_id = id;
  m.income.fill(1.0 / 7.0);
  m.racial_minority = m.elderly = m.child_under_10 = m.mobility_issue = share;
  m.medical_condition = m.chronic_disease = m.owner = m.vehicle_missing = m.social_capital = share;
  return m;
}

/// Scenario small enough for many replications in a unit test.
inline Scenario small_scenario() {
  Scenario s;
  s.name = "small";
  s.population.region.columns = 4;
  s.population.region.rows = 3;
  s.population.region.width_km = 30.0;
  s.population.region.height_km = 24.0;
  s.population.region.total_poles = 160;
  s.population.n_households = 300;
  s.grid.counts.n_substations = 12;
  s.grid.counts.n_transmission = 30;
  s.grid.counts.n_generators = 3;
  s.monte_carlo.min_rep = 3;
  s.monte_carlo.max_rep = 20;
  return s;
}

}  // namespace gridshock::testing
