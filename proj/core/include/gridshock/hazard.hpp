#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gridshock/random.hpp"

namespace gridshock {

/// Planar position in kilometres.
struct Point {
  double x_km = 0.0;
  double y_km = 0.0;
};

double distance_km(Point a, Point b) noexcept;

/// A census tract. `population` counts households (utility customers).
struct Tract {
  std::string id;
  Point centroid;
  double population = 0.0;
  double svi = 0.0;
  double flood_zone_fraction = 0.0;
};

void validate(const Tract& tract);

/// CSV `tract_id,x_km,y_km,population,svi,flood_zone_fraction`.
std::vector<Tract> load_tracts(const std::filesystem::path& path);
void write_tracts(std::span<const Tract> tracts, const std::filesystem::path& path);

struct TrackPoint {
  double t_h = 0.0;
  Point center;
};

struct HurricaneSpec {
  int category = 4;
  /// Storm center positions, timestamps in hours since the hurricane
  /// enters the area. Strictly increasing.
  std::vector<TrackPoint> track;
  double duration_h = 24.0;
  double decay_length_km = 50.0;
  /// Peak sustained wind per category 1..4, m/s. Default values are
  /// placeholders within the Saffir-Simpson bands.
  std::array<double, 4> v_max_ms{38.0, 46.0, 54.0, 65.0};
  /// Sigma of multiplicative lognormal noise per (tract, hour); 0 = none.
  double noise_sigma = 0.0;

  double v_max() const;
  void validate() const;
  /// Storm center at time t, linearly interpolated, clamped at the ends.
  Point center_at(double t_h) const;
};

/// Straight west-to-east track through the middle of the tracts' bounding
/// box, crossing the county centre at mid-passage.
std::vector<TrackPoint> default_track(std::span<const Tract> tracts, double duration_h,
                                      double decay_length_km);

/// Triangular 0 -> 1 -> 0 ramp peaking at duration/2.
double passage_ramp(double t_h, double duration_h) noexcept;

/// Wind speed per tract per whole hour of the passage.
class WindField {
 public:
  WindField() = default;
  WindField(std::vector<std::string> tract_ids, int duration_h);

  int duration_h() const noexcept { return duration_h_; }
  std::size_t tract_count() const noexcept { return ids_.size(); }
  const std::vector<std::string>& tract_ids() const noexcept { return ids_; }

  /// Row index for a tract id, or npos when absent.
  std::size_t find(std::string_view tract_id) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  double at(std::size_t tract, int hour) const { return speeds_[tract * static_cast<std::size_t>(duration_h_) + static_cast<std::size_t>(hour)]; }
  double& at(std::size_t tract, int hour) { return speeds_[tract * static_cast<std::size_t>(duration_h_) + static_cast<std::size_t>(hour)]; }
  std::span<const double> series(std::size_t tract) const {
    return {speeds_.data() + tract * static_cast<std::size_t>(duration_h_), static_cast<std::size_t>(duration_h_)};
  }

  double peak(std::size_t tract) const;
  /// First hour at which the peak occurs.
  int peak_hour(std::size_t tract) const;

  friend bool operator==(const WindField&, const WindField&) = default;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  int duration_h_ = 0;
  std::vector<double> speeds_;
};

WindField parametric_wind_series(const HurricaneSpec& spec, std::span<const Tract> tracts, Rng& rng);

/// CSV `tract_id,hour,wind_ms`, one row per (tract, hour).
WindField load_wind_field(const std::filesystem::path& path);
void write_wind_field(const WindField& field, const std::filesystem::path& path);

double peak_wind(const WindField& field, std::string_view tract_id);

}  // namespace gridshock
