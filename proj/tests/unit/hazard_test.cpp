#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gridshock/error.hpp"
#include "gridshock/hazard.hpp"
#include "temp_dir.hpp"

namespace gridshock {
namespace {

HurricaneSpec stationary_storm(Point center, double duration_h = 24.0) {
  HurricaneSpec spec;
  spec.category = 4;
  spec.duration_h = duration_h;
  spec.track = {TrackPoint{0.0, center}};
  return spec;
}

TEST(WindSeries, CenterAtPeakHourHasFullSpeed) {
  std::vector<Tract> tracts{testing::make_tract("A", 0, 0, 100, 0.5)};
  Rng rng(1);
  auto field = parametric_wind_series(stationary_storm({0, 0}), tracts, rng);
  EXPECT_EQ(field.duration_h(), 24);
  EXPECT_DOUBLE_EQ(field.at(0, 12), 65.0);
}

TEST(WindSeries, DecayLengthAwayIsOneOverE) {
  std::vector<Tract> tracts{testing::make_tract("A", 50, 0, 100, 0.5)};
  Rng rng(1);
  auto field = parametric_wind_series(stationary_storm({0, 0}), tracts, rng);
  EXPECT_NEAR(field.at(0, 12), 23.912163676143751, 1e-12);
  EXPECT_NEAR(field.at(0, 12), 65.0 * std::exp(-1.0), 1e-12);
}

TEST(WindSeries, HourZeroIsCalm) {
  std::vector<Tract> tracts{testing::make_tract("A", 0, 0, 100, 0.5), testing::make_tract("B", 9, 3, 10, 0.1)};
  Rng rng(1);
  auto spec = stationary_storm({0, 0});
  spec.noise_sigma = 0.3;
  auto field = parametric_wind_series(spec, tracts, rng);
  for (std::size_t t = 0; t < 2; ++t) EXPECT_EQ(field.at(t, 0), 0.0);
}

TEST(WindSeries, CategoryOutsideRangeThrows) {
  std::vector<Tract> tracts{testing::make_tract("A", 0, 0, 100, 0.5)};
  Rng rng(1);
  auto spec = stationary_storm({0, 0});
  spec.category = 5;
  try {
    parametric_wind_series(spec, tracts, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(WindSeries, SpeedsAreNonNegativeAndBoundedWithoutNoise) {
  std::vector<Tract> tracts;
  for (int i = 0; i < 20; ++i) tracts.push_back(testing::make_tract("T" + std::to_string(i), i * 7.0, i * 3.0, 1, 0));
  Rng rng(3);
  auto spec = stationary_storm({10, 10}, 30.0);
  spec.track.push_back(TrackPoint{30.0, {120, 40}});
  auto field = parametric_wind_series(spec, tracts, rng);
  for (std::size_t t = 0; t < tracts.size(); ++t) {
    for (int h = 0; h < field.duration_h(); ++h) {
      EXPECT_GE(field.at(t, h), 0.0);
      EXPECT_LE(field.at(t, h), 65.0);
    }
  }
}

TEST(Track, CenterInterpolatesAndClamps) {
  HurricaneSpec spec;
  spec.track = {TrackPoint{0.0, {0, 0}}, TrackPoint{10.0, {10, 20}}};
  EXPECT_DOUBLE_EQ(spec.center_at(5.0).x_km, 5.0);
  EXPECT_DOUBLE_EQ(spec.center_at(5.0).y_km, 10.0);
  EXPECT_DOUBLE_EQ(spec.center_at(-1.0).x_km, 0.0);
  EXPECT_DOUBLE_EQ(spec.center_at(99.0).y_km, 20.0);
}

TEST(Track, NonIncreasingTimesRejected) {
  HurricaneSpec spec;
  spec.track = {TrackPoint{0.0, {0, 0}}, TrackPoint{0.0, {1, 1}}};
  EXPECT_THROW(spec.validate(), Error);
}

TEST(PassageRamp, TriangleShape) {
  EXPECT_EQ(passage_ramp(0.0, 24.0), 0.0);
  EXPECT_EQ(passage_ramp(12.0, 24.0), 1.0);
  EXPECT_DOUBLE_EQ(passage_ramp(6.0, 24.0), 0.5);
  EXPECT_EQ(passage_ramp(24.0, 24.0), 0.0);
}

class WindFile : public ::testing::Test {
 protected:
  testing::TempDir dir;
  std::filesystem::path write(const std::string& body) {
    auto p = dir.path() / "wind.csv";
    std::ofstream(p) << "tract_id,hour,wind_ms\n" << body;
    return p;
  }
};

TEST_F(WindFile, LoadsCompleteGrid) {
  auto f = load_wind_field(write("T1,0,1\nT1,1,2\nT1,2,3\nT2,0,4\nT2,1,5\nT2,2,6\n"));
  EXPECT_EQ(f.duration_h(), 3);
  EXPECT_EQ(f.tract_count(), 2u);
  EXPECT_EQ(f.at(f.find("T2"), 1), 5.0);
}

TEST_F(WindFile, NegativeSpeedRejected) {
  try {
    load_wind_field(write("T1,0,-3\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeSpeed);
  }
}

TEST_F(WindFile, MissingCellRejected) {
  try {
    load_wind_field(write("T1,0,1\nT1,1,2\nT1,2,3\nT2,0,4\nT2,1,5\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompleteGrid);
  }
}

TEST_F(WindFile, RoundTripIsExact) {
  WindField f({"A", "B"}, 2);
  f.at(0, 0) = 0.1;
  f.at(0, 1) = 1.0 / 3.0;
  f.at(1, 0) = 65.0 * std::exp(-1.0);
  f.at(1, 1) = 0.0;
  auto p = dir.path() / "rt.csv";
  write_wind_field(f, p);
  EXPECT_EQ(load_wind_field(p), f);
}

TEST(PeakWind, MaxOfSeries) {
  WindField f({"A", "B", "C"}, 3);
  f.at(0, 0) = 10;
  f.at(0, 1) = 40;
  f.at(0, 2) = 25;
  f.at(2, 0) = 33;
  EXPECT_EQ(peak_wind(f, "A"), 40.0);
  EXPECT_EQ(peak_wind(f, "B"), 0.0);
  EXPECT_EQ(peak_wind(f, "C"), 33.0);
  EXPECT_EQ(f.peak_hour(0), 1);
}

TEST(PeakWind, SingleHourField) {
  WindField f({"A"}, 1);
  f.at(0, 0) = 33;
  EXPECT_EQ(peak_wind(f, "A"), 33.0);
}

TEST(PeakWind, UnknownTractThrows) {
  WindField f({"A"}, 1);
  EXPECT_THROW(peak_wind(f, "Z"), Error);
}

TEST(Tracts, ValidateRejectsSviOutOfRange) {
  auto t = testing::make_tract("A", 0, 0, 10, 1.2);
  EXPECT_THROW(validate(t), Error);
}

}  // namespace
}  // namespace gridshock
