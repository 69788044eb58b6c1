#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "mmlink/antenna.hpp"
#include "mmlink/quadrature.hpp"
#include "mmlink/rng.hpp"

using namespace mmlink;

TEST_CASE("exact array gain") {
  UlaPattern p{16, 20, 2.5};
  CHECK(exact_gain(p, 0.0) == doctest::Approx(16.0).epsilon(1e-12));
  // Nulls at multiples of 1/N inside the period.
  for (int k = 1; k < 16; ++k) {
    CHECK(exact_gain(p, static_cast<double>(k) / 16.0) ==
          doctest::Approx(0.0).epsilon(1e-18));
  }
  CHECK(exact_gain(p, 1.0 / 32.0) ==
        doctest::Approx(6.5054293074885911).epsilon(1e-12));
  // Period 1 and even symmetry.
  CHECK(exact_gain(p, 0.013) == doctest::Approx(exact_gain(p, 1.013)).epsilon(1e-12));
  CHECK(exact_gain(p, 0.013) == doctest::Approx(exact_gain(p, -0.013)).epsilon(1e-12));
  // Removable singularity at integers.
  CHECK(exact_gain(p, 1.0) == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("exact gain integrates to one over a period") {
  for (int n : {4, 9, 16}) {
    UlaPattern p{n, 20, 2.5};
    const auto r = quadrature::integrate(
        [&](double t) { return exact_gain(p, t); }, -0.5, 0.5, 1e-12, 1e-11);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("cosine main lobe approximation") {
  UlaPattern p{16, 20, 2.5};
  CHECK(cosine_gain(p, 0.0) == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(cosine_gain(p, 0.02) ==
        doctest::Approx(11.501653727154373).epsilon(1e-12));
  CHECK(cosine_gain(p, 1.0 / 16.0) == 0.0);
  CHECK(cosine_gain(p, 0.25) == 0.0);
  CHECK(cosine_gain(p, -0.02) == cosine_gain(p, 0.02));
  // Custom lobe exponent.
  UlaPattern q{16, 20, 2.0};
  const double c = std::cos(0.5 * 3.141592653589793 * 16 * 0.02);
  CHECK(cosine_gain(q, 0.02) == doctest::Approx(16.0 * c * c).epsilon(1e-12));
}

TEST_CASE("sectorized staircase") {
  UlaPattern p{8, 20, 2.5};
  const double w = 1.0 / (20.0 * 8.0);
  // lower: sector 0 carries the peak gain N.
  CHECK(sectorized_gain(p, 0.0, SectorRef::lower) == doctest::Approx(8.0));
  // Left-closed sectors: value at a boundary equals the cosine gain there.
  for (int i = 0; i < 20; ++i) {
    CHECK(sectorized_gain(p, i * w, SectorRef::lower) ==
          doctest::Approx(cosine_gain(p, i * w)).epsilon(1e-12));
    // Constant within the sector.
    CHECK(sectorized_gain(p, i * w, SectorRef::lower) ==
          sectorized_gain(p, i * w + 0.9 * w, SectorRef::lower));
  }
  CHECK(sectorized_gain(p, 1.0 / 8.0, SectorRef::lower) == 0.0);
  // mid/upper references evaluate deeper into each sector.
  CHECK(sectorized_gain(p, 0.0, SectorRef::mid) ==
        doctest::Approx(cosine_gain(p, 0.5 * w)).epsilon(1e-12));
  CHECK(sectorized_gain(p, 0.0, SectorRef::upper) ==
        doctest::Approx(cosine_gain(p, w)).epsilon(1e-12));
  // upper reference of the last sector sits on the lobe edge: gain 0, not NaN.
  const double last = sectorized_gain(p, (19.5) * w, SectorRef::upper);
  CHECK(std::isfinite(last));
  CHECK(last == 0.0);
}

TEST_CASE("sector gains stay finite for every N") {
  for (int n = 2; n <= 64; ++n) {
    UlaPattern p{n, 20, 2.5};
    for (SectorRef ref : {SectorRef::lower, SectorRef::mid, SectorRef::upper}) {
      for (double g : sector_gains(p, ref)) {
        CHECK(std::isfinite(g));
        CHECK(g >= 0.0);
        CHECK(g <= n);
      }
    }
  }
}

TEST_CASE("sector probabilities telescope to total mass") {
  UlaPattern p{16, 20, 2.5};
  for (double mu : {0.0, 5e-3, 20e-3}) {
    for (double sigma : {10e-3, 30e-3, 80e-3}) {
      const SectorProbabilities sp = sector_probabilities(p, {mu, sigma});
      for (double a : sp.probs) CHECK(a >= 0.0);
      CHECK(sp.in_lobe() + sp.zero_atom == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate orientation is an indicator") {
  UlaPattern p{16, 20, 2.5};
  const double w = 1.0 / (20.0 * 16.0);
  SectorProbabilities sp = sector_probabilities(p, {2.5 * w, 0.0});
  CHECK(sp.probs[2] == 1.0);
  CHECK(sp.in_lobe() == 1.0);
  CHECK(sp.zero_atom == 0.0);

  sp = sector_probabilities(p, {0.2, 0.0});
  CHECK(sp.in_lobe() == 0.0);
  CHECK(sp.zero_atom == 1.0);
}

TEST_CASE("sector probabilities match Monte Carlo occupancy") {
  UlaPattern p{16, 20, 2.5};
  const OrientationModel orient{5e-3, 30e-3};
  const SectorProbabilities sp = sector_probabilities(p, orient);
  const double w = 1.0 / (20.0 * 16.0);
  const int n = 200'000;
  RngStream rng(11, 0);
  std::vector<int> counts(20, 0);
  int zero = 0;
  for (int i = 0; i < n; ++i) {
    const double t = std::abs(rng.next_gaussian(orient.boresight, orient.sigma));
    if (t >= 1.0 / 16.0) {
      ++zero;
    } else {
      ++counts[static_cast<int>(t / w)];
    }
  }
  for (int i = 0; i < 20; ++i) {
    const double phat = static_cast<double>(counts[i]) / n;
    const double se = std::sqrt(sp.probs[i] * (1.0 - sp.probs[i]) / n) + 1e-12;
    CHECK(std::abs(phat - sp.probs[i]) < 3.5 * se);
  }
  const double zhat = static_cast<double>(zero) / n;
  const double zse = std::sqrt(sp.zero_atom * (1.0 - sp.zero_atom) / n) + 1e-12;
  CHECK(std::abs(zhat - sp.zero_atom) < 3.5 * zse);
}

TEST_CASE("sector gain table") {
  UlaPattern p{8, 20, 2.5};
  const SectorGainTable t =
      build_sector_table(p, {5e-3, 30e-3}, {5e-3, 30e-3}, SectorRef::lower);
  CHECK(t.gains.size() == 20);
  CHECK(t.joint(0, 0) == doctest::Approx(64.0).epsilon(1e-12));
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      CHECK(t.joint(i, j) == doctest::Approx(t.gains[i] * t.gains[j]));
    }
  }
  // All lower-reference gains are positive, so the joint zero atom is just
  // the complement of both sides landing in the lobe.
  double pt = 0.0;
  double pr = 0.0;
  for (double a : t.probs_tx) pt += a;
  for (double a : t.probs_rx) pr += a;
  CHECK(t.zero_atom() == doctest::Approx(1.0 - pt * pr).epsilon(1e-12));

  // With the upper reference the last sector gain is 0 and its probability
  // mass moves into the atom.
  const SectorGainTable tu =
      build_sector_table(p, {5e-3, 30e-3}, {5e-3, 30e-3}, SectorRef::upper);
  CHECK(tu.zero_atom() > 1.0 - pt * pr);
}

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS((UlaPattern{1, 20, 2.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((UlaPattern{8, 0, 2.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((UlaPattern{8, 20, 0.0}).validate(), std::invalid_argument);
  CHECK_NOTHROW((UlaPattern{2, 1, 2.0}).validate());
  CHECK_THROWS_AS(sector_probabilities({8, 20, 2.5}, {0.0, -1e-3}),
                  std::invalid_argument);
}
