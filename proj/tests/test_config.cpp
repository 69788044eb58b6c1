#include <stdexcept>
#include <string>

#include <doctest.h>

#include "mmlink/config.hpp"

using namespace mmlink;

namespace {

const char* kU2u = R"(
# direct link scenario
[link]
kind = u2u
distance_m = 500
carrier_ghz = 60
building_height_m = 25
noise_dbm = 30
nakagami_m = 3
snr_mode = normalized
ref_snr_db = 20

[antenna]
n_elements = 8
n_sectors = 20
lobe_exponent = 2.5
sector_ref = mid

[tx]
theta_prime_mrad = 5
sigma_mrad = 30

[rx]
theta_prime_mrad = 5
sigma_mrad = 30

[run]
seed = 42
trials = 1000000
grid_points = 200
c_th = 10
)";

}  // namespace

TEST_CASE("full u2u config round trip") {
  const config::ScenarioConfig cfg = config::parse_string(kU2u);
  CHECK(cfg.kind == analytic::LinkKind::u2u);
  CHECK(cfg.budget.distance_m == 500.0);
  CHECK(cfg.budget.carrier_ghz == 60.0);
  CHECK(cfg.budget.building_height_m == 25.0);
  CHECK(cfg.budget.nakagami_m == 3.0);
  CHECK(cfg.budget.snr_mode == SnrMode::normalized);
  CHECK(cfg.budget.ref_snr_db == 20.0);
  CHECK(cfg.pattern.n_elements == 8);
  CHECK(cfg.pattern.n_sectors == 20);
  CHECK(cfg.pattern.lobe_exponent == 2.5);
  CHECK(cfg.sector_ref == SectorRef::mid);
  REQUIRE(cfg.tx.has_value());
  REQUIRE(cfg.rx.has_value());
  CHECK(cfg.tx->boresight == doctest::Approx(5e-3));
  CHECK(cfg.tx->sigma == doctest::Approx(30e-3));
  CHECK(cfg.seed == 42);
  CHECK(cfg.trials == 1'000'000);
  CHECK(cfg.grid_points == 200);
  CHECK(cfg.gamma_th == doctest::Approx(1023.0));

  // The raw INI view preserves every key.
  const config::SectionMap map = config::parse_ini(kU2u);
  CHECK(map.at("link").at("kind") == "u2u");
  CHECK(map.at("run").at("c_th") == "10");
  CHECK(map.at("tx").at("sigma_mrad") == "30");
}

TEST_CASE("relay sections and aliases") {
  const std::string text = R"(
[link]
kind = u2u2u
ref_snr_db = 20
[antenna]
n_elements = 8
[s]
sigma_mrad = 30
[R]
sigma_mrad = 30
[d]
sigma_mrad = 30
[run]
gamma_th_db = 10
)";
  const config::ScenarioConfig cfg = config::parse_string(text);
  REQUIRE(cfg.source.has_value());
  REQUIRE(cfg.relay.has_value());
  REQUIRE(cfg.destination.has_value());
  CHECK(cfg.gamma_th == doctest::Approx(10.0));

  // Long-form section names work too.
  std::string alias = text;
  alias.replace(alias.find("[s]"), 3, "[source]");
  alias.replace(alias.find("[R]"), 3, "[relay]");
  alias.replace(alias.find("[d]"), 3, "[destination]");
  const config::ScenarioConfig cfg2 = config::parse_string(alias);
  CHECK(cfg2.source->sigma == doctest::Approx(30e-3));

  const std::string ground = R"(
[link]
kind = g2u2g
ref_snr_db = 20
[antenna]
n_elements = 8
[R]
sigma_mrad = 10
[run]
c_th = 10
)";
  const config::ScenarioConfig cfg3 = config::parse_string(ground);
  REQUIRE(cfg3.relay.has_value());
  CHECK_FALSE(cfg3.tx.has_value());
  CHECK_FALSE(cfg3.source.has_value());
}

TEST_CASE("diagnostics name the offending section and key") {
  // Missing rx section for a u2u link.
  std::string text = kU2u;
  text.replace(text.find("[rx]"), 4, "[zz]");
  CHECK_THROWS_WITH_AS(config::parse_string(text),
                       doctest::Contains("[rx]"), std::runtime_error);

  // Unknown key.
  text = kU2u;
  text.replace(text.find("n_sectors"), 9, "n_sectorz");
  CHECK_THROWS_WITH_AS(config::parse_string(text),
                       doctest::Contains("n_sectorz"), std::runtime_error);

  // Non-numeric value.
  text = kU2u;
  text.replace(text.find("ref_snr_db = 20"), 15, "ref_snr_db = abc");
  CHECK_THROWS_WITH_AS(config::parse_string(text),
                       doctest::Contains("ref_snr_db"), std::runtime_error);

  // Threshold keys are mutually exclusive.
  text = kU2u;
  text += "\n[run]\ngamma_th_db = 10\n";
  CHECK_THROWS_WITH_AS(config::parse_string(text),
                       doctest::Contains("mutually exclusive"),
                       std::runtime_error);

  // Malformed lines carry the line number.
  CHECK_THROWS_WITH_AS(config::parse_ini("[link]\nnonsense\n"),
                       doctest::Contains("line 2"), std::runtime_error);

  // Invalid physical values are rejected with the section name.
  text = kU2u;
  text.replace(text.find("nakagami_m = 3"), 14, "nakagami_m = 0");
  CHECK_THROWS_WITH_AS(config::parse_string(text),
                       doctest::Contains("[link]"), std::runtime_error);
}

TEST_CASE("config hash is content addressed") {
  const config::ScenarioConfig a = config::parse_string(kU2u);
  const config::ScenarioConfig b = config::parse_string(kU2u);
  CHECK(a.hash() == b.hash());
  std::string text = kU2u;
  text.replace(text.find("seed = 42"), 9, "seed = 43");
  const config::ScenarioConfig c = config::parse_string(text);
  CHECK(a.hash() != c.hash());
}
