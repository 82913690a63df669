#include <fstream>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "gridshock/error.hpp"
#include "gridshock/grid.hpp"

namespace gridshock {

using nlohmann::json;

json grid_to_json(const Grid& grid) {
  json nodes = json::array();
  for (NodeId i = 0; i < grid.nodes().size(); ++i) {
    const auto& n = grid.nodes()[i];
    json jn{{"id", i}, {"kind", to_string(n.kind)}, {"tract", grid.tract_ids()[n.tract]},
            {"x_km", n.pos.x_km}, {"y_km", n.pos.y_km}};
    if (n.kind == NodeKind::Pole) jn["feeder"] = n.feeder;
    nodes.push_back(std::move(jn));
  }
  json edges = json::array();
  for (EdgeId i = 0; i < grid.edges().size(); ++i) {
    const auto& e = grid.edges()[i];
    json je{{"id", i}, {"kind", to_string(e.kind)}, {"a", e.a}, {"b", e.b}, {"length_km", e.length_km}};
    if (e.kind == EdgeKind::Transmission) je["n_towers"] = e.n_towers;
    edges.push_back(std::move(je));
  }
  return json{{"tracts", grid.tract_ids()},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"summary",
               {{"generators", grid.generator_count()},
                {"substations", grid.substation_count()},
                {"transmission_elements", grid.transmission_count()},
                {"distribution_elements", grid.distribution_element_count()},
                {"conductors", grid.conductor_count()}}}};
}

Grid grid_from_json(const json& j) {
  try {
    auto ids = j.at("tracts").get<std::vector<std::string>>();
    std::unordered_map<std::string, std::uint32_t> tract_index;
    for (std::uint32_t i = 0; i < ids.size(); ++i) tract_index.emplace(ids[i], i);
    Grid grid(ids);
    auto tract_of = [&](const json& jn) {
      const auto name = jn.at("tract").get<std::string>();
      auto it = tract_index.find(name);
      if (it == tract_index.end()) throw Error(ErrorCode::UnknownTract, "grid node references tract " + name);
      return it->second;
    };
    // Nodes and edges are replayed in file order so component ids match the
    // exporting grid.
    for (const auto& jn : j.at("nodes")) {
      const auto kind = jn.at("kind").get<std::string>();
      const Point p{jn.at("x_km").get<double>(), jn.at("y_km").get<double>()};
      NodeId id;
      if (kind == "generator") {
        id = grid.add_generator(tract_of(jn), p);
      } else if (kind == "substation") {
        id = grid.add_substation(tract_of(jn), p);
      } else if (kind == "pole") {
        id = grid.add_pole(tract_of(jn), p, jn.value("feeder", kNone));
      } else {
        throw Error(ErrorCode::MalformedRow, "unknown node kind " + kind);
      }
      if (jn.contains("id") && jn.at("id").get<NodeId>() != id) {
        throw Error(ErrorCode::MalformedRow, "grid nodes must be listed in id order");
      }
    }
    for (const auto& je : j.at("edges")) {
      const auto kind = je.at("kind").get<std::string>();
      const auto a = je.at("a").get<NodeId>();
      const auto b = je.at("b").get<NodeId>();
      if (kind == "transmission") {
        grid.add_transmission(a, b, je.at("length_km").get<double>(), je.at("n_towers").get<std::uint32_t>());
      } else if (kind == "conductor") {
        grid.add_conductor(a, b);
      } else {
        throw Error(ErrorCode::MalformedRow, "unknown edge kind " + kind);
      }
    }
    grid.validate();
    return grid;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("grid JSON: ") + e.what());
  }
}

void save_grid(const Grid& grid, const std::filesystem::path& path) {
  auto out = csv::open_for_write(path);
  out << grid_to_json(grid).dump(2) << '\n';
}

Grid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRow, path.string() + ": " + e.what());
  }
  return grid_from_json(j);
}

}  // namespace gridshock
