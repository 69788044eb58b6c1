#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "mmlink/analytic.hpp"
#include "mmlink/antenna.hpp"
#include "mmlink/linkbudget.hpp"

namespace mmlink::config {

// Parsed INI-style scenario file. Angles are milliradians in the file and
// radians in the structs below.
struct ScenarioConfig {
  analytic::LinkKind kind = analytic::LinkKind::u2u;
  LinkBudget budget;
  UlaPattern pattern;
  SectorRef sector_ref = SectorRef::mid;

  // Present per link kind: u2u -> tx+rx; u2u2u -> s+R+d; g2u2g -> R.
  std::optional<OrientationModel> tx, rx, source, relay, destination;

  std::uint64_t seed = 1;
  std::uint64_t trials = 10'000'000;
  int grid_points = 400;
  double gamma_th = 0.0;         // linear; from gamma_th_db or c_th
  std::string raw_text;          // canonical text for the config hash

  std::uint64_t hash() const;    // FNV-1a of raw_text
};

// Throws std::runtime_error with a diagnostic naming the offending
// section/key on any validation failure.
ScenarioConfig parse_file(const std::string& path);
ScenarioConfig parse_string(const std::string& text);

// Raw sectioned key-value view, exposed for round-trip tests.
using SectionMap = std::map<std::string, std::map<std::string, std::string>>;
SectionMap parse_ini(const std::string& text);

}  // namespace mmlink::config
