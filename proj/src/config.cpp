#include "mmlink/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mmlink::config {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("config: [" + where + "] " + what);
}

class SectionReader {
 public:
  SectionReader(const SectionMap& map, std::string name)
      : name_(std::move(name)) {
    const auto it = map.find(name_);
    if (it != map.end()) entries_ = &it->second;
  }

  bool exists() const { return entries_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    if (entries_ == nullptr) return std::nullopt;
    const auto it = entries_->find(key);
    if (it == entries_->end()) return std::nullopt;
    used_.insert(key);
    return it->second;
  }

  double number(const std::string& key, double fallback) {
    const auto v = raw(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const double out = std::stod(*v, &pos);
      if (trim(v->substr(pos)).empty()) return out;
    } catch (const std::exception&) {
    }
    fail(name_, "key '" + key + "' is not a number: '" + *v + "'");
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
    const double v = number(key, static_cast<double>(fallback));
    const auto out = static_cast<std::uint64_t>(v);
    if (static_cast<double>(out) != v) {
      fail(name_, "key '" + key + "' is not a non-negative integer");
    }
    return out;
  }

  void finish() const {
    if (entries_ == nullptr) return;
    for (const auto& [key, value] : *entries_) {
      if (!used_.count(key)) fail(name_, "unknown key '" + key + "'");
    }
  }

 private:
  std::string name_;
  const std::map<std::string, std::string>* entries_ = nullptr;
  std::set<std::string> used_;
};

OrientationModel read_orientation(const SectionMap& map,
                                  const std::string& section,
                                  const std::string& alias) {
  std::string name = section;
  if (!map.count(name) && !alias.empty() && map.count(alias)) name = alias;
  SectionReader r(map, name);
  if (!r.exists()) fail(section, "section is required for this link kind");
  OrientationModel orient;
  orient.boresight = r.number("theta_prime_mrad", 0.0) * 1e-3;
  orient.sigma = r.number("sigma_mrad", 0.0) * 1e-3;
  r.finish();
  try {
    orient.validate();
  } catch (const std::exception& e) {
    fail(name, e.what());
  }
  return orient;
}

}  // namespace

SectionMap parse_ini(const std::string& text) {
  SectionMap map;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw std::runtime_error("config: malformed section header at line " +
                                 std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      map[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw std::runtime_error("config: expected 'key = value' at line " +
                               std::to_string(line_no));
    }
    map[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return map;
}

ScenarioConfig parse_string(const std::string& text) {
  const SectionMap map = parse_ini(text);
  ScenarioConfig cfg;
  cfg.raw_text = text;

  SectionReader link(map, "link");
  const std::string kind = link.raw("kind").value_or("u2u");
  if (kind == "u2u") {
    cfg.kind = analytic::LinkKind::u2u;
  } else if (kind == "u2u2u") {
    cfg.kind = analytic::LinkKind::u2u2u;
  } else if (kind == "g2u2g") {
    cfg.kind = analytic::LinkKind::g2u2g;
  } else {
    fail("link", "unknown kind '" + kind + "'");
  }
  cfg.budget.distance_m = link.number("distance_m", cfg.budget.distance_m);
  cfg.budget.carrier_ghz = link.number("carrier_ghz", cfg.budget.carrier_ghz);
  cfg.budget.building_height_m =
      link.number("building_height_m", cfg.budget.building_height_m);
  cfg.budget.noise_dbm = link.number("noise_dbm", cfg.budget.noise_dbm);
  cfg.budget.nakagami_m = link.number("nakagami_m", cfg.budget.nakagami_m);
  if (const auto mode = link.raw("snr_mode")) {
    if (*mode == "normalized") {
      cfg.budget.snr_mode = SnrMode::normalized;
    } else if (*mode == "physical") {
      cfg.budget.snr_mode = SnrMode::physical;
    } else {
      fail("link", "unknown snr_mode '" + *mode + "'");
    }
  }
  cfg.budget.ref_snr_db = link.number("ref_snr_db", cfg.budget.ref_snr_db);
  cfg.budget.tx_power_dbm =
      link.number("tx_power_dbm", cfg.budget.tx_power_dbm);
  link.finish();
  try {
    cfg.budget.validate();
  } catch (const std::exception& e) {
    fail("link", e.what());
  }

  SectionReader antenna(map, "antenna");
  cfg.pattern.n_elements =
      static_cast<int>(antenna.integer("n_elements", cfg.pattern.n_elements));
  cfg.pattern.n_sectors =
      static_cast<int>(antenna.integer("n_sectors", cfg.pattern.n_sectors));
  cfg.pattern.lobe_exponent =
      antenna.number("lobe_exponent", cfg.pattern.lobe_exponent);
  if (const auto ref = antenna.raw("sector_ref")) {
    if (*ref == "lower") {
      cfg.sector_ref = SectorRef::lower;
    } else if (*ref == "mid") {
      cfg.sector_ref = SectorRef::mid;
    } else if (*ref == "upper") {
      cfg.sector_ref = SectorRef::upper;
    } else {
      fail("antenna", "unknown sector_ref '" + *ref + "'");
    }
  }
  antenna.finish();
  try {
    cfg.pattern.validate();
  } catch (const std::exception& e) {
    fail("antenna", e.what());
  }

  switch (cfg.kind) {
    case analytic::LinkKind::u2u:
      cfg.tx = read_orientation(map, "tx", "");
      cfg.rx = read_orientation(map, "rx", "");
      break;
    case analytic::LinkKind::u2u2u:
      cfg.source = read_orientation(map, "s", "source");
      cfg.relay = read_orientation(map, "R", "relay");
      cfg.destination = read_orientation(map, "d", "destination");
      break;
    case analytic::LinkKind::g2u2g:
      cfg.relay = read_orientation(map, "R", "relay");
      break;
  }

  SectionReader run(map, "run");
  cfg.seed = run.integer("seed", cfg.seed);
  cfg.trials = run.integer("trials", cfg.trials);
  cfg.grid_points = static_cast<int>(run.integer("grid_points", cfg.grid_points));
  const auto gamma_th_db = run.raw("gamma_th_db");
  const auto c_th = run.raw("c_th");
  if (gamma_th_db && c_th) {
    fail("run", "gamma_th_db and c_th are mutually exclusive");
  }
  if (gamma_th_db) {
    cfg.gamma_th = db_to_linear(run.number("gamma_th_db", 0.0));
  } else if (c_th) {
    cfg.gamma_th = snr_threshold_from_capacity(run.number("c_th", 0.0));
  }
  run.finish();
  if (cfg.trials == 0) fail("run", "trials must be positive");
  if (cfg.grid_points < 2) fail("run", "grid_points must be >= 2");

  static const std::set<std::string> known = {
      "link", "antenna", "run",   "tx",    "rx",         "s",
      "R",    "d",       "source", "relay", "destination"};
  for (const auto& [name, entries] : map) {
    if (!known.count(name)) fail(name, "unknown section");
  }
  return cfg;
}

ScenarioConfig parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

std::uint64_t ScenarioConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : raw_text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace mmlink::config
