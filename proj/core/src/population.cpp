#include "gridshock/population.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "csv.hpp"
#include "gridshock/error.hpp"

namespace gridshock {

namespace {

constexpr std::array<const char*, 9> kBinaryColumns{"racial_minority", "elderly",         "child_under_10",
                                                    "mobility_issue",  "medical_condition", "chronic_disease",
                                                    "owner",           "vehicle_missing", "social_capital"};

std::array<double*, 9> binary_fields(TractMarginals& m) {
  return {&m.racial_minority,   &m.elderly, &m.child_under_10,  &m.mobility_issue, &m.medical_condition,
          &m.chronic_disease, &m.owner,   &m.vehicle_missing, &m.social_capital};
}

std::array<const double*, 9> binary_fields(const TractMarginals& m) {
  return {&m.racial_minority,   &m.elderly, &m.child_under_10,  &m.mobility_issue, &m.medical_condition,
          &m.chronic_disease, &m.owner,   &m.vehicle_missing, &m.social_capital};
}

void check_share(double v, const std::string& what) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::OutOfRange, what + " must lie in [0,1]");
}

}  // namespace

void TractMarginals::validate() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < income.size(); ++k) {
    check_share(income[k], tract_id + ": income_" + std::to_string(k + 1));
    sum += income[k];
  }
  if (std::abs(sum - 1.0) > 1e-6) throw Error(ErrorCode::OutOfRange, tract_id + ": income shares must sum to 1");
  const auto fields = binary_fields(*this);
  for (std::size_t k = 0; k < fields.size(); ++k) check_share(*fields[k], tract_id + ": " + kBinaryColumns[k]);
}

std::vector<TractMarginals> load_marginals(const std::filesystem::path& path) {
  const auto table = csv::read(path);
  const auto c_id = table.column("tract_id");
  std::array<std::size_t, 7> c_income{};
  for (std::size_t k = 0; k < 7; ++k) c_income[k] = table.column("income_" + std::to_string(k + 1));
  std::array<std::size_t, 9> c_bin{};
  for (std::size_t k = 0; k < 9; ++k) c_bin[k] = table.column(kBinaryColumns[k]);

  std::vector<TractMarginals> out;
  for (const auto& row : table.rows) {
    const auto where = path.string() + ":" + std::to_string(row.line);
    TractMarginals m;
    m.tract_id = row.fields[c_id];
    for (std::size_t k = 0; k < 7; ++k) m.income[k] = csv::to_double(row.fields[c_income[k]], where);
    auto fields = binary_fields(m);
    for (std::size_t k = 0; k < 9; ++k) *fields[k] = csv::to_double(row.fields[c_bin[k]], where);
    m.validate();
    out.push_back(std::move(m));
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, path.string() + ": no marginal rows");
  return out;
}

void write_marginals(std::span<const TractMarginals> marginals, const std::filesystem::path& path) {
  auto out = csv::open_for_write(path);
  out << "tract_id";
  for (int k = 1; k <= 7; ++k) out << ",income_" << k;
  for (const char* c : kBinaryColumns) out << ',' << c;
  out << '\n';
  for (const auto& m : marginals) {
    out << m.tract_id;
    for (double v : m.income) out << ',' << csv::exact(v);
    for (const double* v : binary_fields(m)) out << ',' << csv::exact(*v);
    out << '\n';
  }
}

std::uint64_t Population::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  auto mixd = [&mix](double d) {
    std::uint64_t bits = 0;
    static_assert(sizeof bits == sizeof d);
    std::memcpy(&bits, &d, sizeof d);
    mix(bits);
  };
  mix(households.size());
  for (const auto& x : households) {
    mix(x.id);
    mix(x.tract);
    mix(x.pole);
    mixd(x.pos.x_km);
    mixd(x.pos.y_km);
    for (int v : {x.income, x.racial_minority, x.elderly, x.child_under_10, x.mobility_issue, x.medical_condition,
                  x.chronic_disease, x.owner, x.vehicle_missing, x.social_capital, x.flood_zone, x.need,
                  x.self_efficacy, x.experience}) {
      mix(static_cast<std::uint64_t>(v));
    }
    mixd(x.state_duration_years);
    mixd(x.supermarket_distance_mi);
  }
  return h;
}

std::vector<std::size_t> allocate_households(std::span<const Tract> tracts, std::size_t n_total) {
  if (tracts.empty()) throw Error(ErrorCode::EmptyInput, "no tracts to allocate households to");
  double total = 0.0;
  for (const auto& t : tracts) {
    if (!(t.population >= 0.0)) throw Error(ErrorCode::InvalidParameter, t.id + ": negative population");
    total += t.population;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidParameter, "total tract population is zero");
  std::vector<std::size_t> counts(tracts.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < tracts.size(); ++i) {
    const double exact = static_cast<double>(n_total) * tracts[i].population / total;
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < n_total; ++k, ++assigned) ++counts[remainders[k % remainders.size()].second];
  return counts;
}

std::vector<double> need_covariates(const Household& h) {
  return {double(h.racial_minority), double(h.mobility_issue), double(h.child_under_10), double(h.medical_condition)};
}

std::vector<double> self_efficacy_covariates(const Household& h) {
  return {double(h.owner), double(h.medical_condition), double(h.chronic_disease), double(h.social_capital)};
}

std::vector<double> experience_covariates(const Household& h) {
  return {h.state_duration_years, double(h.racial_minority), double(h.elderly), double(h.child_under_10)};
}

std::vector<double> substitute_covariates(const Household& h, double expectation_days) {
  return {double(h.income), double(h.renter()), std::log1p(expectation_days), double(h.self_efficacy)};
}

std::vector<double> preparedness_covariates(const Household& h, double forewarning_days) {
  return {double(h.vehicle_missing), double(h.experience),  double(h.elderly),
          double(h.renter()),        forewarning_days,        h.supermarket_distance_mi,
          double(h.self_efficacy)};
}

Population synthesize_households(std::span<const Tract> tracts, std::span<const TractMarginals> marginals,
                                 std::size_t n_total, const CoefficientSet& coeffs, Rng& rng, const Grid* grid) {
  coeffs.validate();
  std::unordered_map<std::string, const TractMarginals*> by_id;
  for (const auto& m : marginals) {
    m.validate();
    by_id.emplace(m.tract_id, &m);
  }
  for (const auto& t : tracts) validate(t);

  std::vector<std::vector<NodeId>> tract_poles(tracts.size());
  if (grid != nullptr) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < tracts.size(); ++i) index.emplace(tracts[i].id, i);
    for (NodeId p : grid->poles()) {
      auto it = index.find(grid->tract_ids()[grid->nodes()[p].tract]);
      if (it == index.end()) throw Error(ErrorCode::TractMismatch, "grid tract missing from tract list");
      tract_poles[it->second].push_back(p);
    }
  }

  const auto counts = allocate_households(tracts, n_total);
  Population pop;
  for (const auto& t : tracts) pop.tract_ids.push_back(t.id);
  pop.households.reserve(n_total);

  for (std::size_t ti = 0; ti < tracts.size(); ++ti) {
    if (counts[ti] == 0) continue;
    const auto& tract = tracts[ti];
    auto it = by_id.find(tract.id);
    if (it == by_id.end()) throw Error(ErrorCode::UnknownTract, "no marginals for tract " + tract.id);
    const auto& m = *it->second;
    if (grid != nullptr && tract_poles[ti].empty()) {
      throw Error(ErrorCode::TractMismatch, "tract " + tract.id + " has households but no poles");
    }
    for (std::size_t k = 0; k < counts[ti]; ++k) {
      Household h;
      h.id = static_cast<std::uint32_t>(pop.households.size());
      h.tract = static_cast<std::uint32_t>(ti);
      if (grid != nullptr) {
        const auto& poles = tract_poles[ti];
        h.pole = poles[rng.index(0, poles.size() - 1)];
        const auto& p = grid->nodes()[h.pole].pos;
        h.pos = Point{p.x_km + rng.uniform(-0.1, 0.1), p.y_km + rng.uniform(-0.1, 0.1)};
      } else {
        h.pos = Point{tract.centroid.x_km + rng.uniform(-1.0, 1.0), tract.centroid.y_km + rng.uniform(-1.0, 1.0)};
      }
      const double u = rng.uniform();
      double cum = 0.0;
      h.income = 7;
      for (int b = 0; b < 7; ++b) {
        cum += m.income[b];
        if (u < cum) {
          h.income = b + 1;
          break;
        }
      }
      h.racial_minority = rng.bernoulli(m.racial_minority);
      h.elderly = rng.bernoulli(m.elderly);
      h.child_under_10 = rng.bernoulli(m.child_under_10);
      h.mobility_issue = rng.bernoulli(m.mobility_issue);
      h.medical_condition = rng.bernoulli(m.medical_condition);
      h.chronic_disease = rng.bernoulli(m.chronic_disease);
      h.owner = rng.bernoulli(m.owner);
      h.vehicle_missing = rng.bernoulli(m.vehicle_missing);
      h.social_capital = rng.bernoulli(m.social_capital);
      h.flood_zone = rng.bernoulli(tract.flood_zone_fraction);
      h.state_duration_years = rng.truncated_normal(25.0, 15.0, 0.0);
      h.supermarket_distance_mi = rng.truncated_normal(5.0, std::sqrt(30.0), 0.0);
      h.need = ordinal_sample(coeffs.need, need_covariates(h), rng.uniform());
      h.self_efficacy = ordinal_sample(coeffs.self_efficacy, self_efficacy_covariates(h), rng.uniform());
      h.experience = rng.bernoulli(logistic_response(coeffs.experience, experience_covariates(h)));
      pop.households.push_back(h);
    }
  }
  return pop;
}

double expected_outage(const CoefficientSet& coeffs, double forewarning_days, int informed, int owner, int elderly,
                       int mobility_issue, int flood_zone) {
  if (!(forewarning_days >= 0.0)) throw Error(ErrorCode::InvalidParameter, "forewarning days must be >= 0");
  const std::array<double, 6> x{std::log1p(forewarning_days), double(informed),       double(owner),
                                double(elderly),              double(mobility_issue), double(flood_zone)};
  return std::exp(coeffs.expectation.predictor(x));
}

double expected_outage(const CoefficientSet& coeffs, const Household& h, double forewarning_days, int informed) {
  return expected_outage(coeffs, forewarning_days, informed, h.owner, h.elderly, h.mobility_issue, h.flood_zone);
}

double tolerance_days(const CoefficientSet& coeffs, int substitute, int need, double prepared) {
  if (need < 1 || need > 5) throw Error(ErrorCode::OutOfRange, "need level must be in 1..5");
  const std::array<double, 3> x{double(substitute), double(need), prepared};
  return std::exp(coeffs.tolerance.predictor(x));
}

}  // namespace gridshock
