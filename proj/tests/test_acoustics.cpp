// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hydronoise/acoustics.hpp"
#include "hydronoise/enrich.hpp"

using namespace hydronoise;

namespace {

FrequencyParams fp63() { return FrequencyTable::defaults().at(63); }

}  // namespace

TEST_CASE("source level speed law") {
  const auto fp = fp63();
  CHECK(source_level(136.0, 7.8, false, fp) == doctest::Approx(140.63285163326867).epsilon(1e-12));
  CHECK(source_level(136.0, 11.0, false, fp) - source_level(136.0, 6.0, false, fp) ==
        doctest::Approx(4.051285681180808).epsilon(1e-12));
  // no speed term at or below v0
  CHECK(source_level(136.0, 3.9, false, fp) == 136.0);
  CHECK(source_level(136.0, 0.0, false, fp) == 136.0);
  CHECK(source_level(136.0, 2.0, true, fp) == 136.0 + fp.fishing_inc_db);
}

TEST_CASE("per-frequency source levels") {
  const auto& t = FrequencyTable::defaults();
  CHECK(t.frequencies() == std::vector<int>{63, 125, 400, 4000});
  CHECK(compute_sl0(1670.0, 63) == doctest::Approx(139.0).epsilon(1e-12));
  CHECK(compute_sl0(kReferenceEngineHp, 63) == doctest::Approx(t.at(63).anchor_sl0_db));
  CHECK(source_level(133.0, 2.5, true, t.at(125)) == doctest::Approx(143.0));
  CHECK_THROWS_AS(compute_sl0(500.0, 50), std::out_of_range);
  CHECK_THROWS_AS(compute_sl0(0.0, 63), std::invalid_argument);
}

TEST_CASE("transmission loss") {
  CHECK(transmission_loss(1000.0, 420.0, 0.0) == doctest::Approx(58.116246451989504).epsilon(1e-12));
  CHECK(transmission_loss(420.0, 420.0, 0.0) == doctest::Approx(52.46498580795801).epsilon(1e-12));
  CHECK(transmission_loss(1000.0, 420.0, 1e-6) == doctest::Approx(58.1172464519895).epsilon(1e-12));
  CHECK(transmission_loss(100.0, 420.0, 0.0) == doctest::Approx(40.0));
  CHECK_THROWS_AS(transmission_loss(0.0, 420.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(transmission_loss(10.0, 0.0, 0.0), std::invalid_argument);

  SUBCASE("continuous at the transition") {
    for (double rt : {10.0, 150.0, 420.0, 3000.0}) {
      CHECK(std::abs(transmission_loss(rt * (1 + 1e-12), rt, 0.0) - transmission_loss(rt, rt, 0.0)) < 1e-9);
    }
  }

  SUBCASE("monotone") {
    double prev = -1e9;
    for (double r = 1.0; r < 1e5; r *= 1.07) {
      const double tl = transmission_loss(r, 420.0, 2e-5);
      CHECK(tl > prev);
      prev = tl;
    }
  }
}

TEST_CASE("received level") {
  CHECK(received_level(136.0, 100.0, 420.0, 0.0, 60.78) == doctest::Approx(35.22).epsilon(1e-12));
}

TEST_CASE("propagation radius") {
  const double r = propagation_radius(136.0, 420.0, 60.78);
  CHECK(r == doctest::Approx(13811.798586576011).epsilon(1e-12));
  CHECK(std::abs(received_level(136.0, r, 420.0, 0.0, 60.78)) < 1e-9);

  SUBCASE("inverse of the loss in both regimes") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> sl(120.0, 170.0), rt(10.0, 400.0), an(50.0, 100.0);
    for (int i = 0; i < 2000; ++i) {
      const double s = sl(rng), t = rt(rng), a = an(rng);
      const double rad = propagation_radius(s, t, a);
      if (rad < 1.0) continue;
      CHECK(std::abs(received_level(s, rad, t, 0.0, a)) < 1e-6);
    }
  }

  SUBCASE("near-field regime") {
    // SL - ambient small enough that the level reaches ambient before r_trans
    const double rad = propagation_radius(100.0, 1000.0, 60.0);
    CHECK(rad == doctest::Approx(100.0));
    CHECK(rad < 1000.0);
  }
}

TEST_CASE("incoherent sum") {
  const double a[] = {20.0, 10.0};
  CHECK(sum_levels(a) == doctest::Approx(20.41392685158225).epsilon(1e-12));
  const double b[] = {10.0, 10.0};
  CHECK(sum_levels(b) == doctest::Approx(10.0 + 3.010299956639812).epsilon(1e-12));
  const double c[] = {50.0, 50.0, 50.0, 50.0};
  CHECK(sum_levels(c) - 50.0 == doctest::Approx(6.020599913279624).epsilon(1e-12));
  CHECK_THROWS_AS(sum_levels(std::span<const double>{}), std::invalid_argument);
  CHECK(intensity_to_db(db_to_intensity(37.5)) == doctest::Approx(37.5));
}

TEST_CASE("frequency table") {
  FrequencyTable t;
  CHECK_THROWS_AS(t.at(63), std::out_of_range);
  t.set({1000, 130.0, 1.0, 2.0, 1e-4});
  CHECK(t.contains(1000));
  CHECK(t.at(1000).trans_mult == 2.0);
}
