#include "gridshock/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include "csv.hpp"
#include "gridshock/error.hpp"

namespace gridshock {

double distance_km(Point a, Point b) noexcept { return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km); }

void validate(const Tract& t) {
  if (t.id.empty()) throw Error(ErrorCode::InvalidParameter, "tract with empty id");
  if (!(t.population >= 0.0)) throw Error(ErrorCode::OutOfRange, "tract " + t.id + ": population < 0");
  if (!(t.svi >= 0.0 && t.svi <= 1.0)) throw Error(ErrorCode::OutOfRange, "tract " + t.id + ": svi outside [0,1]");
  if (!(t.flood_zone_fraction >= 0.0 && t.flood_zone_fraction <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "tract " + t.id + ": flood_zone_fraction outside [0,1]");
  }
}

std::vector<Tract> load_tracts(const std::filesystem::path& path) {
  auto table = csv::read(path);
  const auto c_id = table.column("tract_id");
  const auto c_x = table.column("x_km");
  const auto c_y = table.column("y_km");
  const auto c_pop = table.column("population");
  const auto c_svi = table.column("svi");
  const auto c_fz = table.column("flood_zone_fraction");
  std::vector<Tract> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const std::string where = path.string() + ":" + std::to_string(row.line);
    Tract t;
    t.id = row.fields[c_id];
    t.centroid = {csv::to_double(row.fields[c_x], where), csv::to_double(row.fields[c_y], where)};
    t.population = csv::to_double(row.fields[c_pop], where);
    t.svi = csv::to_double(row.fields[c_svi], where);
    t.flood_zone_fraction = csv::to_double(row.fields[c_fz], where);
    validate(t);
    out.push_back(std::move(t));
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, path.string() + ": no tracts");
  return out;
}

void write_tracts(std::span<const Tract> tracts, const std::filesystem::path& path) {
  auto out = csv::open_for_write(path);
  out << "tract_id,x_km,y_km,population,svi,flood_zone_fraction\n";
  for (const auto& t : tracts) {
    out << t.id << ',' << csv::exact(t.centroid.x_km) << ',' << csv::exact(t.centroid.y_km) << ','
        << csv::exact(t.population) << ',' << csv::exact(t.svi) << ',' << csv::exact(t.flood_zone_fraction) << '\n';
  }
}

double HurricaneSpec::v_max() const {
  if (category < 1 || category > 4) {
    throw Error(ErrorCode::OutOfRange, "hurricane category must be 1..4, got " + std::to_string(category));
  }
  return v_max_ms[static_cast<std::size_t>(category - 1)];
}

void HurricaneSpec::validate() const {
  (void)v_max();
  if (!(duration_h > 0.0)) throw Error(ErrorCode::InvalidParameter, "duration_h must be > 0");
  if (!(decay_length_km > 0.0)) throw Error(ErrorCode::InvalidParameter, "decay_length_km must be > 0");
  if (noise_sigma < 0.0) throw Error(ErrorCode::InvalidParameter, "noise_sigma must be >= 0");
  if (track.empty()) throw Error(ErrorCode::InvalidParameter, "hurricane track is empty");
  for (std::size_t i = 1; i < track.size(); ++i) {
    if (!(track[i].t_h > track[i - 1].t_h)) {
      throw Error(ErrorCode::InvalidParameter, "track timestamps must be strictly increasing");
    }
  }
  for (double v : v_max_ms) {
    if (!(v >= 0.0)) throw Error(ErrorCode::InvalidParameter, "v_max must be >= 0");
  }
}

Point HurricaneSpec::center_at(double t_h) const {
  if (t_h <= track.front().t_h) return track.front().center;
  if (t_h >= track.back().t_h) return track.back().center;
  auto it = std::upper_bound(track.begin(), track.end(), t_h,
                             [](double t, const TrackPoint& p) { return t < p.t_h; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  const double w = (t_h - a.t_h) / (b.t_h - a.t_h);
  return {a.center.x_km + w * (b.center.x_km - a.center.x_km), a.center.y_km + w * (b.center.y_km - a.center.y_km)};
}

std::vector<TrackPoint> default_track(std::span<const Tract> tracts, double duration_h, double decay_length_km) {
  if (tracts.empty()) throw Error(ErrorCode::EmptyInput, "no tracts");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& t : tracts) {
    xmin = std::min(xmin, t.centroid.x_km);
    xmax = std::max(xmax, t.centroid.x_km);
    ymin = std::min(ymin, t.centroid.y_km);
    ymax = std::max(ymax, t.centroid.y_km);
  }
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  const double half = std::max(0.5 * (xmax - xmin), decay_length_km);
  return {TrackPoint{0.0, {cx - half, cy}}, TrackPoint{duration_h, {cx + half, cy}}};
}

double passage_ramp(double t_h, double duration_h) noexcept {
  const double half = 0.5 * duration_h;
  if (half <= 0.0) return 0.0;
  return std::max(0.0, 1.0 - std::abs(t_h - half) / half);
}

WindField::WindField(std::vector<std::string> tract_ids, int duration_h)
    : ids_(std::move(tract_ids)), duration_h_(duration_h) {
  if (duration_h_ <= 0) throw Error(ErrorCode::InvalidParameter, "wind field duration must be > 0");
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) throw Error(ErrorCode::DuplicateEntry, "duplicate tract " + ids_[i]);
  }
  speeds_.assign(ids_.size() * static_cast<std::size_t>(duration_h_), 0.0);
}

std::size_t WindField::find(std::string_view tract_id) const {
  auto it = index_.find(std::string(tract_id));
  return it == index_.end() ? npos : it->second;
}

double WindField::peak(std::size_t tract) const {
  auto s = series(tract);
  return *std::max_element(s.begin(), s.end());
}

int WindField::peak_hour(std::size_t tract) const {
  auto s = series(tract);
  return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
}

WindField parametric_wind_series(const HurricaneSpec& spec, std::span<const Tract> tracts, Rng& rng) {
  if (tracts.empty()) throw Error(ErrorCode::EmptyInput, "no tracts");
  spec.validate();
  const double vmax = spec.v_max();
  const int hours = static_cast<int>(std::ceil(spec.duration_h));
  std::vector<std::string> ids;
  ids.reserve(tracts.size());
  for (const auto& t : tracts) ids.push_back(t.id);
  WindField field(std::move(ids), hours);
  for (int h = 0; h < hours; ++h) {
    const double t = static_cast<double>(h);
    const double ramp = passage_ramp(t, spec.duration_h);
    const Point c = spec.center_at(t);
    for (std::size_t i = 0; i < tracts.size(); ++i) {
      double w = vmax * ramp * std::exp(-distance_km(tracts[i].centroid, c) / spec.decay_length_km);
      if (spec.noise_sigma > 0.0) w *= std::exp(rng.normal(0.0, spec.noise_sigma));
      field.at(i, h) = w;
    }
  }
  return field;
}

WindField load_wind_field(const std::filesystem::path& path) {
  auto table = csv::read(path);
  const auto c_id = table.column("tract_id");
  const auto c_hour = table.column("hour");
  const auto c_wind = table.column("wind_ms");

  std::vector<std::string> ids;
  std::map<std::string, std::size_t> index;
  struct Cell {
    std::size_t tract;
    long long hour;
    double wind;
    std::size_t line;
  };
  std::vector<Cell> cells;
  long long max_hour = -1;
  for (const auto& row : table.rows) {
    const std::string where = path.string() + ":" + std::to_string(row.line);
    const auto& id = row.fields[c_id];
    if (id.empty()) throw Error(ErrorCode::MalformedRow, where + ": empty tract id");
    const long long hour = csv::to_int(row.fields[c_hour], where);
    const double wind = csv::to_double(row.fields[c_wind], where);
    if (hour < 0) throw Error(ErrorCode::MalformedRow, where + ": negative hour");
    if (!(wind >= 0.0)) throw Error(ErrorCode::NegativeSpeed, where + ": wind " + row.fields[c_wind]);
    auto [it, inserted] = index.emplace(id, ids.size());
    if (inserted) ids.push_back(id);
    cells.push_back({it->second, hour, wind, row.line});
    max_hour = std::max(max_hour, hour);
  }
  if (cells.empty()) throw Error(ErrorCode::EmptyInput, path.string() + ": no wind rows");

  const int hours = static_cast<int>(max_hour + 1);
  WindField field(ids, hours);
  std::vector<char> seen(ids.size() * static_cast<std::size_t>(hours), 0);
  for (const auto& c : cells) {
    auto& flag = seen[c.tract * static_cast<std::size_t>(hours) + static_cast<std::size_t>(c.hour)];
    if (flag) {
      throw Error(ErrorCode::DuplicateEntry,
                  path.string() + ":" + std::to_string(c.line) + ": duplicate cell for " + ids[c.tract]);
    }
    flag = 1;
    field.at(c.tract, static_cast<int>(c.hour)) = c.wind;
  }
  for (std::size_t t = 0; t < ids.size(); ++t) {
    for (int h = 0; h < hours; ++h) {
      if (!seen[t * static_cast<std::size_t>(hours) + static_cast<std::size_t>(h)]) {
        throw Error(ErrorCode::IncompleteGrid, "missing (" + ids[t] + ", " + std::to_string(h) + ")");
      }
    }
  }
  return field;
}

void write_wind_field(const WindField& field, const std::filesystem::path& path) {
  auto out = csv::open_for_write(path);
  out << "tract_id,hour,wind_ms\n";
  for (std::size_t t = 0; t < field.tract_count(); ++t) {
    for (int h = 0; h < field.duration_h(); ++h) {
      out << field.tract_ids()[t] << ',' << h << ',' << csv::exact(field.at(t, h)) << '\n';
    }
  }
}

double peak_wind(const WindField& field, std::string_view tract_id) {
  const auto idx = field.find(tract_id);
  if (idx == WindField::npos) throw Error(ErrorCode::UnknownTract, "no wind series for tract " + std::string(tract_id));
  return field.peak(idx);
}

}  // namespace gridshock
