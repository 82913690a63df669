#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridshock/hazard.hpp"
#include "gridshock/random.hpp"

namespace gridshock {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using ComponentId = std::uint32_t;
inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

enum class NodeKind : std::uint8_t { Generator, Substation, Pole };
enum class EdgeKind : std::uint8_t { Transmission, Conductor };

/// Independently repairable units. A transmission element contributes two:
/// its tower chain and its line.
enum class ComponentClass : std::uint8_t { Substation, TransmissionTower, TransmissionLine, Pole, Conductor };
inline constexpr std::size_t kComponentClassCount = 5;

std::string_view to_string(NodeKind k) noexcept;
std::string_view to_string(EdgeKind k) noexcept;
std::string_view to_string(ComponentClass c) noexcept;

struct Node {
  NodeKind kind = NodeKind::Substation;
  std::uint32_t tract = 0;
  Point pos;
  ComponentId component = kNone;  // generators have none: they never fail
  std::uint32_t feeder = kNone;    // poles only
  EdgeId upstream = kNone;         // poles only: conductor toward the substation
};

struct Edge {
  EdgeKind kind = EdgeKind::Transmission;
  NodeId a = kNone;
  NodeId b = kNone;
  double length_km = 0.0;
  std::uint32_t n_towers = 0;
  /// Transmission: {tower chain, line}. Conductor: {conductor, kNone}.
  std::array<ComponentId, 2> parts{kNone, kNone};
};

struct Component {
  ComponentClass cls = ComponentClass::Substation;
  /// Exposure tracts; equal unless the component spans two tracts.
  std::uint32_t tract = 0;
  std::uint32_t tract_b = 0;
  bool on_edge = false;
  std::uint32_t owner = kNone;  // NodeId or EdgeId
};

struct Incidence {
  EdgeId edge;
  NodeId other;
};

/// Power network: generators and substations joined by transmission
/// elements, with radial pole feeders hanging off substations.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<std::string> tract_ids);

  NodeId add_generator(std::uint32_t tract, Point pos);
  NodeId add_substation(std::uint32_t tract, Point pos);
  NodeId add_pole(std::uint32_t tract, Point pos, std::uint32_t feeder);
  EdgeId add_transmission(NodeId a, NodeId b, double length_km, std::uint32_t n_towers);
  /// Links `pole` to its upstream node (a substation or the previous pole).
  EdgeId add_conductor(NodeId upstream, NodeId pole);

  const std::vector<std::string>& tract_ids() const noexcept { return tract_ids_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Component>& components() const noexcept { return components_; }
  std::span<const Incidence> incident(NodeId n) const { return adjacency_[n]; }

  std::size_t generator_count() const noexcept { return generators_.size(); }
  std::size_t substation_count() const noexcept { return substations_.size(); }
  std::size_t transmission_count() const noexcept { return transmission_count_; }
  std::size_t pole_count() const noexcept { return poles_.size(); }
  std::size_t conductor_count() const noexcept { return edges_.size() - transmission_count_; }
  /// One distribution element = one pole with its upstream conductor span.
  std::size_t distribution_element_count() const noexcept { return poles_.size(); }

  const std::vector<NodeId>& generators() const noexcept { return generators_; }
  const std::vector<NodeId>& substations() const noexcept { return substations_; }
  /// Poles in insertion order, which is feeder-chain order within a tract.
  const std::vector<NodeId>& poles() const noexcept { return poles_; }

  /// Throws if a pole lacks a conductor path to a substation or if any
  /// component is unreachable from a generator in the undamaged state.
  void validate() const;

 private:
  std::uint32_t check_tract(std::uint32_t tract) const;
  ComponentId add_component(ComponentClass cls, std::uint32_t tract, std::uint32_t tract_b, bool on_edge,
                            std::uint32_t owner);
  void link(NodeId a, NodeId b, EdgeId e);

  std::vector<std::string> tract_ids_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Component> components_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<NodeId> generators_;
  std::vector<NodeId> substations_;
  std::vector<NodeId> poles_;
  std::size_t transmission_count_ = 0;
};

struct GridCounts {
  std::uint32_t n_substations = 97;
  std::uint32_t n_transmission = 242;
  std::uint32_t n_generators = 12;
  double customer_per_pole = 40.0;
  double tower_spacing_km = 0.23;
  /// Longest radial pole chain; a tract with more poles gets more feeders.
  std::uint32_t poles_per_feeder = 8;
  double substation_jitter_km = 2.0;

  void validate() const;
};

/// ceil(length / spacing), at least one tower.
std::uint32_t tower_count(double length_km, double spacing_km);

/// Number of poles a tract needs: ceil(households / customers per pole).
std::uint32_t pole_count_for(double households, double customer_per_pole);

Grid build_synthetic_grid(std::span<const Tract> tracts, const GridCounts& counts, Rng& rng);

nlohmann::json grid_to_json(const Grid& grid);
Grid grid_from_json(const nlohmann::json& j);
void save_grid(const Grid& grid, const std::filesystem::path& path);
Grid load_grid(const std::filesystem::path& path);

}  // namespace gridshock
