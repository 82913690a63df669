#include "gridshock/coefficients.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "gridshock/error.hpp"

namespace gridshock {

using nlohmann::json;

namespace {

double dot(std::span<const double> beta, std::span<const double> x) {
  if (beta.size() != x.size()) {
    throw Error(ErrorCode::ArityMismatch, "model has " + std::to_string(beta.size()) + " coefficients, got " +
                                              std::to_string(x.size()) + " covariates");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += beta[i] * x[i];
  return s;
}

std::size_t term_index(const std::vector<std::string>& terms, const std::string& name) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown model term '" + name + "'");
}

LinearModel linear(double intercept, std::vector<std::pair<std::string, double>> terms) {
  LinearModel m;
  m.intercept = intercept;
  for (auto& [name, value] : terms) {
    m.terms.push_back(name);
    m.coefficients.push_back(value);
  }
  return m;
}

OrdinalModel ordinal(std::array<double, 4> intercepts, std::vector<std::pair<std::string, double>> terms) {
  OrdinalModel m;
  m.intercepts = intercepts;
  for (auto& [name, value] : terms) {
    m.terms.push_back(name);
    m.coefficients.push_back(value);
  }
  return m;
}

void check_terms(const std::vector<std::string>& terms, const std::vector<double>& coefficients,
                 const char* model) {
  if (terms.size() != coefficients.size()) {
    throw Error(ErrorCode::ArityMismatch, std::string(model) + ": term and coefficient counts differ");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidParameter, std::string(model) + ": non-finite coefficient");
  }
}

}  // namespace

double LinearModel::predictor(std::span<const double> x) const { return intercept + dot(coefficients, x); }

double LinearModel::coefficient(const std::string& term) const { return coefficients[term_index(terms, term)]; }

double OrdinalModel::predictor(std::span<const double> x) const { return dot(coefficients, x); }

void OrdinalModel::validate() const {
  for (std::size_t j = 1; j < intercepts.size(); ++j) {
    if (!(intercepts[j] > intercepts[j - 1])) {
      throw Error(ErrorCode::NonIncreasingIntercepts, "ordinal intercepts must be strictly increasing");
    }
  }
  check_terms(terms, coefficients, "ordinal model");
}

CoefficientSet CoefficientSet::defaults() {
  CoefficientSet s;
  s.expectation = linear(1.74700, {{"log1p_forewarning", 0.30471},
                                   {"informed", 0.12369},
                                   {"owner", -0.27720},
                                   {"elderly", -0.21065},
                                   {"mobility_issue", -0.51210},
                                   {"flood_zone", -0.28153}});
  s.tolerance = linear(1.7762, {{"substitute", -0.5130}, {"need", 0.1827}, {"prepared", 0.2664}});
  s.substitute = linear(-2.53950, {{"income", 0.07416},
                                   {"renter", -0.93270},
                                   {"log1p_expectation", 0.48647},
                                   {"self_efficacy", 0.26128}});
  s.preparedness = linear(1.89292, {{"vehicle_missing", -0.58174},
                                    {"experience", -1.11299},
                                    {"elderly", 0.44445},
                                    {"renter", -0.60578},
                                    {"forewarning", 0.08802},
                                    {"supermarket_distance", -0.02362},
                                    {"self_efficacy", 0.50834}});
  s.experience = linear(1.371844, {{"state_duration", 0.020162},
                                   {"racial_minority", -0.656271},
                                   {"elderly", -0.366558},
                                   {"child_under_10", 0.272127}});
  s.need = ordinal({0.44441, 1.79242, 3.344, 4.992}, {{"racial_minority", 0.89646},
                                                      {"mobility_issue", -0.51914},
                                                      {"child_under_10", 0.21971},
                                                      {"medical_condition", -0.30319}});
  s.self_efficacy = ordinal({-3.191, -1.792, -0.551, 1.458}, {{"owner", 0.339},
                                                             {"medical_condition", -0.245},
                                                             {"chronic_disease", -0.237},
                                                             {"social_capital", 0.217}});
  const double a = s.preparedness.intercept;
  s.preparedness_levels.intercepts = {-a - 2.0, -a, -a + 2.0, -a + 4.0};
  s.preparedness_levels.terms = s.preparedness.terms;
  for (double c : s.preparedness.coefficients) s.preparedness_levels.coefficients.push_back(-c);
  return s;
}

void CoefficientSet::validate() const {
  check_terms(expectation.terms, expectation.coefficients, "expectation");
  check_terms(tolerance.terms, tolerance.coefficients, "tolerance");
  check_terms(substitute.terms, substitute.coefficients, "substitute");
  check_terms(preparedness.terms, preparedness.coefficients, "preparedness");
  check_terms(experience.terms, experience.coefficients, "experience");
  need.validate();
  self_efficacy.validate();
  preparedness_levels.validate();
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_response(const LinearModel& model, std::span<const double> x) {
  return sigmoid(model.predictor(x));
}

std::array<double, 5> ordinal_pmf(const OrdinalModel& model, std::span<const double> x) {
  model.validate();
  const double eta = model.predictor(x);
  std::array<double, 5> p{};
  double prev = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    const double cum = sigmoid(model.intercepts[j] + eta);
    p[j] = cum - prev;
    prev = cum;
  }
  p[4] = 1.0 - prev;
  return p;
}

int ordinal_sample(const OrdinalModel& model, std::span<const double> x, double u) {
  model.validate();
  const double eta = model.predictor(x);
  for (std::size_t j = 0; j < 4; ++j) {
    if (u < sigmoid(model.intercepts[j] + eta)) return static_cast<int>(j) + 1;
  }
  return 5;
}

namespace {

void apply_terms(const json& j, std::vector<std::string>& terms, std::vector<double>& coefficients) {
  if (!j.contains("coefficients")) return;
  for (const auto& [name, value] : j.at("coefficients").items()) {
    coefficients[term_index(terms, name)] = value.get<double>();
  }
}

void apply(const json& j, LinearModel& m) {
  for (const auto& [key, _] : j.items()) {
    if (key != "intercept" && key != "coefficients") {
      throw Error(ErrorCode::InvalidParameter, "unknown key '" + key + "' in linear model");
    }
  }
  if (j.contains("intercept")) m.intercept = j.at("intercept").get<double>();
  apply_terms(j, m.terms, m.coefficients);
}

void apply(const json& j, OrdinalModel& m) {
  for (const auto& [key, _] : j.items()) {
    if (key != "intercepts" && key != "coefficients") {
      throw Error(ErrorCode::InvalidParameter, "unknown key '" + key + "' in ordinal model");
    }
  }
  if (j.contains("intercepts")) {
    const auto v = j.at("intercepts").get<std::vector<double>>();
    if (v.size() != 4) throw Error(ErrorCode::ArityMismatch, "ordinal model needs exactly 4 intercepts");
    std::copy(v.begin(), v.end(), m.intercepts.begin());
  }
  apply_terms(j, m.terms, m.coefficients);
}

json to_json(const LinearModel& m) {
  json c = json::object();
  for (std::size_t i = 0; i < m.terms.size(); ++i) c[m.terms[i]] = m.coefficients[i];
  return json{{"intercept", m.intercept}, {"coefficients", c}};
}

json to_json(const OrdinalModel& m) {
  json c = json::object();
  for (std::size_t i = 0; i < m.terms.size(); ++i) c[m.terms[i]] = m.coefficients[i];
  return json{{"intercepts", m.intercepts}, {"coefficients", c}};
}

}  // namespace

CoefficientSet coefficients_from_json(const json& j, CoefficientSet base) {
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "expectation") apply(value, base.expectation);
      else if (key == "tolerance") apply(value, base.tolerance);
      else if (key == "substitute") apply(value, base.substitute);
      else if (key == "preparedness") apply(value, base.preparedness);
      else if (key == "experience") apply(value, base.experience);
      else if (key == "need") apply(value, base.need);
      else if (key == "self_efficacy") apply(value, base.self_efficacy);
      else if (key == "preparedness_levels") apply(value, base.preparedness_levels);
      else throw Error(ErrorCode::InvalidParameter, "unknown coefficient model '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("coefficients: ") + e.what());
  }
  base.validate();
  return base;
}

json coefficients_to_json(const CoefficientSet& s) {
  return json{{"expectation", to_json(s.expectation)},   {"tolerance", to_json(s.tolerance)},
              {"substitute", to_json(s.substitute)},     {"preparedness", to_json(s.preparedness)},
              {"experience", to_json(s.experience)},     {"need", to_json(s.need)},
              {"self_efficacy", to_json(s.self_efficacy)}, {"preparedness_levels", to_json(s.preparedness_levels)}};
}

CoefficientSet load_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, path.string() + ": " + e.what());
  }
  return coefficients_from_json(j);
}

}  // namespace gridshock
