#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "mmlink/linkbudget.hpp"

using namespace mmlink;

namespace {

LinkBudget base() {
  LinkBudget b;
  b.distance_m = 500.0;
  b.carrier_ghz = 60.0;
  b.building_height_m = 25.0;
  return b;
}

}  // namespace

TEST_CASE("path loss reference point") {
  // Independent high-precision evaluation of the loss formula.
  CHECK(path_loss_db(base()) ==
        doctest::Approx(133.071051142128).epsilon(1e-10));
}

TEST_CASE("doubling the distance") {
  LinkBudget b = base();
  const double p1 = path_loss_db(b);
  b.distance_m = 1000.0;
  const double p2 = path_loss_db(b);
  const double h173 = std::pow(25.0, 1.73);
  const double log2v = std::log10(2.0);
  // First term gains exactly 20 log10(2); the distance-dependent secondary
  // terms account for the rest.
  const double expected = 20.0 * log2v + std::min(0.03 * h173, 10.0) * log2v +
                          0.002 * 500.0 * std::log10(25.0);
  CHECK(p2 - p1 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("height clamps saturate") {
  LinkBudget b = base();
  b.building_height_m = 40.0;
  const double p40 = path_loss_db(b);
  b.building_height_m = 50.0;
  const double p50 = path_loss_db(b);
  // Both min terms are clamped (10 and 14.77), so only the final linear
  // term still depends on the height.
  CHECK(p50 - p40 ==
        doctest::Approx(0.002 * 500.0 * std::log10(50.0 / 40.0)).epsilon(1e-10));
}

TEST_CASE("path loss monotone in distance and carrier") {
  LinkBudget b = base();
  double prev = -1e9;
  for (double z = 50.0; z <= 2000.0; z *= 1.5) {
    b.distance_m = z;
    const double p = path_loss_db(b);
    CHECK(p > prev);
    prev = p;
  }
  b = base();
  prev = -1e9;
  for (double fc = 6.0; fc <= 100.0; fc *= 1.4) {
    b.carrier_ghz = fc;
    const double p = path_loss_db(b);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("reference snr modes") {
  LinkBudget b = base();
  b.snr_mode = SnrMode::normalized;
  b.ref_snr_db = 0.0;
  CHECK(reference_snr(b) == doctest::Approx(1.0).epsilon(1e-14));
  b.ref_snr_db = 20.0;
  CHECK(reference_snr(b) == doctest::Approx(100.0).epsilon(1e-14));

  // Physical mode with Pt chosen so gamma_bar lands at x dB matches
  // normalized mode at x.
  for (double x : {0.0, 12.5, 30.0}) {
    LinkBudget phys = base();
    phys.snr_mode = SnrMode::physical;
    phys.noise_dbm = 30.0;
    phys.tx_power_dbm = x + path_loss_db(phys) + phys.noise_dbm;
    LinkBudget norm = base();
    norm.ref_snr_db = x;
    CHECK(std::abs(linear_to_db(reference_snr(phys)) - x) < 1e-12);
    CHECK(reference_snr(phys) ==
          doctest::Approx(reference_snr(norm)).epsilon(1e-12));
  }
}

TEST_CASE("snr threshold from capacity") {
  CHECK(snr_threshold_from_capacity(0.0) == 0.0);
  CHECK(snr_threshold_from_capacity(1.0) == doctest::Approx(1.0));
  CHECK(snr_threshold_from_capacity(10.0) == doctest::Approx(1023.0));
  CHECK_THROWS_AS(snr_threshold_from_capacity(-1.0), std::invalid_argument);
}

TEST_CASE("validation and warnings") {
  LinkBudget b = base();
  CHECK_FALSE(b.validity_warning().has_value());
  b.building_height_m = 200.0;
  CHECK(b.validity_warning().has_value());

  b = base();
  b.distance_m = 0.0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b = base();
  b.nakagami_m = 0.3;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b = base();
  b.carrier_ghz = -1.0;
  CHECK_THROWS_AS(path_loss_db(b), std::invalid_argument);
}
