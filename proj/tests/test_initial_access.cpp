#include "mmwmc/initial_access.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace mmwmc;

namespace {
constexpr auto A = BfArchitecture::Analog;
constexpr auto D = BfArchitecture::Digital;
constexpr auto UL = IaDesign::UplinkBased;
constexpr auto DL = IaDesign::DownlinkBased;
} // namespace

TEST_CASE("simultaneous directions depend only on the receiver")
{
  CHECK(simultaneous_directions(UL, D, A, 16, 8) == 16);
  CHECK(simultaneous_directions(UL, D, D, 16, 8) == 16);
  CHECK(simultaneous_directions(UL, A, D, 16, 8) == 1);
  CHECK(simultaneous_directions(DL, A, A, 16, 8) == 1);
  CHECK(simultaneous_directions(DL, D, A, 16, 8) == 1);
  CHECK(simultaneous_directions(DL, A, D, 16, 8) == 8);
}

TEST_CASE("scan counts")
{
  CHECK(scan_count(UL, A, A, 16, 8) == 128);
  CHECK(scan_count(DL, A, A, 16, 8) == 128);
  CHECK(scan_count(UL, D, A, 16, 8) == 8);
  CHECK(scan_count(DL, A, D, 16, 8) == 16);
  CHECK(scan_count(UL, A, A, 16, 8, 4) == 32);
  CHECK(scan_count(UL, A, A, 16, 8, 3) == 43);
  CHECK_THROWS(scan_count(UL, A, A, 16, 8, 0));
  CHECK_THROWS(scan_count(UL, A, A, 16, 8, 17));
  CHECK_THROWS(scan_count(UL, A, A, 0, 8));
}

TEST_CASE("delays and overhead")
{
  CHECK(access_delay(128, 200e-6) == doctest::Approx(25.6e-3).epsilon(1e-12));
  CHECK(access_delay(16, 200e-6) == doctest::Approx(3.2e-3).epsilon(1e-12));
  CHECK(access_delay(8, 200e-6) == doctest::Approx(1.6e-3).epsilon(1e-12));
  CHECK(overhead(10e-6, 200e-6) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(overhead(50e-6, 50e-6) == 1.0);
  CHECK(overhead(100e-6, 200e-6) == 0.5);
  CHECK_THROWS_AS(overhead(300e-6, 200e-6), std::invalid_argument);
  CHECK_THROWS_AS(overhead(0.0, 200e-6), std::invalid_argument);
}

TEST_CASE("delay table rows")
{
  const auto rows = delay_table(16, 8, 200e-6);
  REQUIRE(rows.size() == 4);
  const int dl[4] = {128, 16, 128, 16};
  const int ul[4] = {128, 128, 8, 8};
  for (int r = 0; r < 4; ++r) {
    CHECK(rows[r].dl_scans == dl[r]);
    CHECK(rows[r].ul_scans == ul[r]);
    CHECK(rows[r].dl_delay_s == doctest::Approx(dl[r] * 200e-6));
    CHECK(rows[r].ul_delay_s == doctest::Approx(ul[r] * 200e-6));
  }
  CHECK(rows[0].scell == A);
  CHECK(rows[0].ue == A);
  CHECK(rows[1].ue == D);
  CHECK(rows[2].scell == D);
  CHECK(rows[3].scell == D);
  CHECK(rows[3].ue == D);
}

TEST_CASE("digital budget at the SCell beats the UE iff n_ue <= n_bs")
{
  for (int n_bs : {1, 4, 8, 16, 64}) {
    for (int n_ue : {1, 4, 8, 16, 64}) {
      const bool ul_better = scan_count(UL, D, A, n_bs, n_ue) <= scan_count(DL, A, D, n_bs, n_ue);
      CHECK(ul_better == (n_ue <= n_bs));
    }
  }
}
