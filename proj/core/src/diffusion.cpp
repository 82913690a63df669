#include "gridshock/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "csv.hpp"
#include "gridshock/error.hpp"

namespace gridshock {

std::string_view to_string(NetworkKind k) noexcept {
  switch (k) {
    case NetworkKind::Random: return "random";
    case NetworkKind::SmallWorld: return "small_world";
    case NetworkKind::ScaleFree: return "scale_free";
    case NetworkKind::Distance: return "distance";
  }
  return "?";
}

NetworkKind parse_network_kind(std::string_view name) {
  if (name == "random") return NetworkKind::Random;
  if (name == "small_world") return NetworkKind::SmallWorld;
  if (name == "scale_free") return NetworkKind::ScaleFree;
  if (name == "distance") return NetworkKind::Distance;
  throw Error(ErrorCode::InvalidParameter, "unknown network kind '" + std::string(name) + "'");
}

void NetworkParams::validate() const {
  if (!(mean_degree >= 0.0)) throw Error(ErrorCode::InvalidParameter, "mean degree must be >= 0");
  if (!(rewire_p >= 0.0 && rewire_p <= 1.0)) throw Error(ErrorCode::InvalidParameter, "rewire_p must be in [0,1]");
  if (kind == NetworkKind::ScaleFree && attachment_m < 1) {
    throw Error(ErrorCode::InvalidParameter, "attachment m must be >= 1");
  }
  if (kind == NetworkKind::SmallWorld) {
    const auto k = static_cast<long long>(mean_degree);
    if (static_cast<double>(k) != mean_degree || k % 2 != 0) {
      throw Error(ErrorCode::InvalidParameter, "small_world degree must be an even integer");
    }
  }
}

SocialNetwork::SocialNetwork(NetworkKind kind, std::vector<std::vector<std::uint32_t>> adjacency)
    : kind_(kind), adj_(std::move(adjacency)) {
  for (std::uint32_t v = 0; v < adj_.size(); ++v) {
    auto& list = adj_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end() ||
        std::binary_search(list.begin(), list.end(), v)) {
      throw Error(ErrorCode::InvalidParameter, "network must be simple");
    }
  }
}

std::size_t SocialNetwork::edge_count() const {
  std::size_t sum = 0;
  for (const auto& l : adj_) sum += l.size();
  return sum / 2;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> SocialNetwork::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count());
  for (std::uint32_t a = 0; a < adj_.size(); ++a) {
    for (std::uint32_t b : adj_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

namespace {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

bool linked(const Adjacency& adj, std::uint32_t a, std::uint32_t b) {
  return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
}

void link(Adjacency& adj, std::uint32_t a, std::uint32_t b) {
  adj[a].push_back(b);
  adj[b].push_back(a);
}

void unlink(Adjacency& adj, std::uint32_t a, std::uint32_t b) {
  adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
  adj[b].erase(std::find(adj[b].begin(), adj[b].end(), a));
}

Adjacency erdos_renyi(std::uint32_t n, double k, Rng& rng) {
  Adjacency adj(n);
  if (n < 2) return adj;
  const double p = k / static_cast<double>(n - 1);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (rng.uniform() < p) link(adj, a, b);
    }
  }
  return adj;
}

Adjacency watts_strogatz(std::uint32_t n, std::uint32_t k, double p, Rng& rng) {
  Adjacency adj(n);
  const std::uint32_t half = k / 2;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t j = 1; j <= half; ++j) link(adj, a, (a + j) % n);
  }
  if (p <= 0.0) return adj;
  for (std::uint32_t j = 1; j <= half; ++j) {
    for (std::uint32_t a = 0; a < n; ++a) {
      const std::uint32_t b = (a + j) % n;
      if (!linked(adj, a, b) || rng.uniform() >= p) continue;
      if (adj[a].size() >= n - 1) continue;
      std::uint32_t c = 0;
      do {
        c = static_cast<std::uint32_t>(rng.index(0, n - 1));
      } while (c == a || linked(adj, a, c));
      unlink(adj, a, b);
      link(adj, a, c);
    }
  }
  return adj;
}

Adjacency barabasi_albert(std::uint32_t n, std::uint32_t m, Rng& rng) {
  Adjacency adj(n);
  std::vector<std::uint32_t> ends;  // each node repeated once per incident edge
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = a + 1; b < m; ++b) {
      link(adj, a, b);
      ends.push_back(a);
      ends.push_back(b);
    }
  }
  std::vector<std::uint32_t> targets;
  for (std::uint32_t v = m; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const std::uint32_t t = ends.empty() ? static_cast<std::uint32_t>(rng.index(0, v - 1))
                                           : ends[rng.index(0, ends.size() - 1)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (std::uint32_t t : targets) {
      link(adj, v, t);
      ends.push_back(v);
      ends.push_back(t);
    }
  }
  return adj;
}

Adjacency within_radius(std::span<const Point> pos, double radius) {
  const auto n = static_cast<std::uint32_t>(pos.size());
  Adjacency adj(n);
  if (!(radius > 0.0)) return adj;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (distance_km(pos[a], pos[b]) <= radius) link(adj, a, b);
    }
  }
  return adj;
}

}  // namespace

SocialNetwork build_social_network(const NetworkParams& params, std::span<const Point> positions, Rng& rng) {
  params.validate();
  const auto n = static_cast<std::uint32_t>(positions.size());
  switch (params.kind) {
    case NetworkKind::Random:
      if (n > 0 && params.mean_degree >= n) throw Error(ErrorCode::InvalidParameter, "mean degree k must be < n");
      return {params.kind, erdos_renyi(n, params.mean_degree, rng)};
    case NetworkKind::SmallWorld: {
      const auto k = static_cast<std::uint32_t>(params.mean_degree);
      if (k >= n) throw Error(ErrorCode::InvalidParameter, "lattice degree k must be < n");
      return {params.kind, watts_strogatz(n, k, params.rewire_p, rng)};
    }
    case NetworkKind::ScaleFree:
      if (params.attachment_m >= n) throw Error(ErrorCode::InvalidParameter, "attachment m must be < n");
      return {params.kind, barabasi_albert(n, params.attachment_m, rng)};
    case NetworkKind::Distance:
      return {params.kind, within_radius(positions, params.radius_km)};
  }
  throw Error(ErrorCode::InvalidParameter, "unknown network kind");
}

SocialNetwork build_social_network(const NetworkParams& params, const Population& population, Rng& rng) {
  std::vector<Point> pos;
  pos.reserve(population.size());
  for (const auto& h : population.households) pos.push_back(h.pos);
  return build_social_network(params, pos, rng);
}

void write_edge_list(const SocialNetwork& net, const std::filesystem::path& path) {
  auto out = csv::open_for_write(path);
  out << "a,b\n";
  for (const auto& [a, b] : net.edges()) out << a << ',' << b << '\n';
}

void InfoParams::validate() const {
  for (double p : {official, share_prepared, share_other}) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidParameter, "information probabilities must be in [0,1]");
  }
}

void AdoptionParams::validate() const {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidParameter, "lambda must be >= 0");
  if (forewarning_days < 0) throw Error(ErrorCode::InvalidParameter, "forewarning days must be >= 0");
  if (acting_level < 1 || acting_level > 5) throw Error(ErrorCode::InvalidParameter, "acting level must be in 1..5");
}

BehaviorState::BehaviorState(std::size_t n)
    : informed(n, 0),
      inform_day(n, -1),
      prepared(n, 0),
      prepare_day(n, -1),
      prepare_level(n, 1),
      substitute(n, 0),
      expectation_days(n, 0.0) {}

std::size_t BehaviorState::informed_count() const {
  return static_cast<std::size_t>(std::count(informed.begin(), informed.end(), 1));
}

std::size_t BehaviorState::prepared_count() const {
  return static_cast<std::size_t>(std::count(prepared.begin(), prepared.end(), 1));
}

double BehaviorState::preparedness_value(std::uint32_t h, PreparednessMode mode) const {
  return mode == PreparednessMode::Binary ? double(prepared[h]) : double(prepare_level[h]);
}

void step_information(int day, BehaviorState& state, const SocialNetwork& net, const InfoParams& info, Rng& rng) {
  info.validate();
  const auto n = state.size();
  if (net.size() != n) throw Error(ErrorCode::InvalidParameter, "network and state sizes differ");
  const auto informed0 = state.informed;
  const auto& prepared0 = state.prepared;  // adoption runs after this step, so unchanged here
  // Every household draws once for the official channel and once per
  // neighbor, informed or not, so the stream stays aligned across parameter
  // changes and a larger prepared set can only inform more households.
  for (std::uint32_t v = 0; v < n; ++v) {
    bool hears = rng.uniform() < info.official;
    for (std::uint32_t u : net.neighbors(v)) {
      const double r = rng.uniform();
      if (informed0[u] && r < (prepared0[u] ? info.share_prepared : info.share_other)) hears = true;
    }
    if (hears && !informed0[v]) {
      state.informed[v] = 1;
      state.inform_day[v] = day;
    }
  }
}

double prepared_neighbor_share(const SocialNetwork& net, const BehaviorState& state, std::uint32_t v) {
  const auto nb = net.neighbors(v);
  if (nb.empty()) return 0.0;
  std::size_t k = 0;
  for (std::uint32_t u : nb) k += state.prepared[u];
  return static_cast<double>(k) / static_cast<double>(nb.size());
}

double preparedness_logit(const CoefficientSet& coeffs, const Household& h, double forewarning_days, double lambda,
                          double neighbor_share) {
  return coeffs.preparedness.predictor(preparedness_covariates(h, forewarning_days)) + lambda * neighbor_share;
}

void step_adoption(int day, BehaviorState& state, const SocialNetwork& net, const Population& population,
                   const CoefficientSet& coeffs, const AdoptionParams& adoption, Rng& rng) {
  adoption.validate();
  const auto n = state.size();
  if (net.size() != n || population.size() != n) {
    throw Error(ErrorCode::InvalidParameter, "network, population and state sizes differ");
  }
  if (adoption.forewarning_days < 1) return;
  const double f = adoption.forewarning_days;

  std::vector<double> share(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (state.informed[v]) share[v] = prepared_neighbor_share(net, state, v);
  }

  // Two draws per household per day regardless of state keep the stream
  // aligned, so raising lambda can only add adopters.
  for (std::uint32_t v = 0; v < n; ++v) {
    const double u_substitute = rng.uniform();
    const double u_adopt = rng.uniform();
    if (!state.informed[v]) continue;
    const auto& h = population.households[v];
    if (state.inform_day[v] == day) {
      double expectation = expected_outage(coeffs, h, f, 1);
      if (adoption.sample_expectation) expectation = rng.poisson(expectation);
      state.expectation_days[v] = expectation;
      state.substitute[v] = u_substitute < logistic_response(coeffs.substitute, substitute_covariates(h, expectation));
    }
    if (adoption.mode == PreparednessMode::Binary) {
      if (state.prepared[v]) continue;
      const double p = sigmoid(preparedness_logit(coeffs, h, f, adoption.lambda, share[v]));
      const double hazard = p >= 1.0 ? 1.0 : -std::expm1(std::log1p(-p) / f);
      if (u_adopt < hazard) {
        state.prepared[v] = 1;
        state.prepare_day[v] = day;
      }
    } else {
      const double r = u_adopt + adoption.lambda * share[v];
      const int level = ordinal_sample(coeffs.preparedness_levels, preparedness_covariates(h, f), r);
      state.prepare_level[v] = std::max(state.prepare_level[v], level);
      if (!state.prepared[v] && state.prepare_level[v] >= adoption.acting_level) {
        state.prepared[v] = 1;
        state.prepare_day[v] = day;
      }
    }
  }
}

BehaviorState run_forewarning(const SocialNetwork& net, const Population& population, const CoefficientSet& coeffs,
                              const InfoParams& info, const AdoptionParams& adoption, Rng& info_rng,
                              Rng& adoption_rng) {
  BehaviorState state(population.size());
  for (int day = 0; day < adoption.forewarning_days; ++day) {
    step_information(day, state, net, info, info_rng);
    step_adoption(day, state, net, population, coeffs, adoption, adoption_rng);
  }
  return state;
}

}  // namespace gridshock
