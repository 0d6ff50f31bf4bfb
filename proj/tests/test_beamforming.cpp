#include "mmwmc/beamforming.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace mmwmc;

TEST_CASE("codebook geometry")
{
  const Codebook bs = make_codebook(8, 8, 16);
  REQUIRE(bs.n_directions() == 16);
  for (int k = 0; k < 16; ++k) {
    CHECK(bs.steering(k).azimuth_rad * 180.0 / std::numbers::pi == doctest::Approx(22.5 * k));
    CHECK(bs.steering(k).elevation_rad == 0.0);
  }
  const Codebook ue = make_codebook(4, 4, 8);
  REQUIRE(ue.n_directions() == 8);
  for (int k = 0; k < 8; ++k) {
    CHECK(ue.steering(k).azimuth_rad * 180.0 / std::numbers::pi == doctest::Approx(45.0 * k));
  }
}

TEST_CASE("zero dimensions and bad indices are rejected")
{
  CHECK_THROWS_AS(make_codebook(0, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_codebook(4, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_codebook(4, 4, 0), std::invalid_argument);
  const Codebook cb = make_codebook(2, 2, 4);
  CHECK_THROWS_AS(array_gain_db(cb, 4, 0.0, 0.0), std::out_of_range);
  CHECK_THROWS_AS(array_gain_db(cb, -1, 0.0, 0.0), std::out_of_range);
}

TEST_CASE("single element is isotropic")
{
  const Codebook cb = make_codebook(1, 1, 1);
  std::mt19937_64 rng{3};
  std::uniform_real_distribution<double> az(-10.0, 10.0);
  std::uniform_real_distribution<double> el(-1.5, 1.5);
  for (int n = 0; n < 100; ++n) {
    CHECK(array_gain_db(cb, 0, az(rng), el(rng)) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("peak gain at each steering angle is 10 log10(N)")
{
  for (auto [rows, cols, dirs] : {std::tuple{8, 8, 16}, std::tuple{4, 4, 8}}) {
    const Codebook cb = make_codebook(rows, cols, dirs);
    const double expected = 10.0 * std::log10(rows * cols);
    for (int k = 0; k < dirs; ++k) {
      const SteeringAngle s = cb.steering(k);
      CHECK(std::abs(array_gain_db(cb, k, s.azimuth_rad, s.elevation_rad) - expected) < 0.01);
      // No sampled angle exceeds the peak.
      for (int a = 0; a < 720; ++a) {
        const double az = 2.0 * std::numbers::pi * a / 720.0;
        REQUIRE(cb.gain_linear(k, az, 0.1 * std::sin(a)) <= rows * cols * (1.0 + 1e-12));
      }
    }
  }
  CHECK(std::abs(make_codebook(8, 8, 16).peak_gain_db() - 18.06) < 0.01);
  CHECK(std::abs(make_codebook(4, 4, 8).peak_gain_db() - 12.04) < 0.01);
}

TEST_CASE("gain matches element-by-element array factor")
{
  std::mt19937_64 rng{11};
  std::uniform_real_distribution<double> az(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> el(-0.6, 0.6);
  const Codebook cb = make_codebook(8, 8, 16);
  for (int n = 0; n < 500; ++n) {
    const int k = n % 16;
    const double a = az(rng);
    const double e = el(rng);
    CHECK(cb.gain_linear(k, a, e) == doctest::Approx(oracle::panel_gain_linear(8, 8, 0.5, 16, k, a, e)).epsilon(1e-9));
  }
}

TEST_CASE("gain is 2pi-periodic in azimuth")
{
  const Codebook cb = make_codebook(4, 4, 8);
  for (int n = 0; n < 50; ++n) {
    const double a = -3.0 + 0.13 * n;
    for (int k = 0; k < 8; ++k) {
      CHECK(cb.gain_linear(k, a, 0.05) ==
            doctest::Approx(cb.gain_linear(k, a + 2.0 * std::numbers::pi, 0.05)).epsilon(1e-9));
    }
  }
}

TEST_CASE("wrap_angle")
{
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(3.0 * std::numbers::pi) == doctest::Approx(-std::numbers::pi));
  CHECK(wrap_angle(-0.5) == doctest::Approx(-0.5));
  CHECK(wrap_angle(2.0 * std::numbers::pi + 0.25) == doctest::Approx(0.25));
}
