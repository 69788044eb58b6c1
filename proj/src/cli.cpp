#include "mmlink/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "mmlink/analytic.hpp"
#include "mmlink/montecarlo.hpp"

namespace mmlink::cli {
namespace {

using nlohmann::json;

struct LoadedScenario {
  config::ScenarioConfig cfg;
  optimizer::Scenario scenario;
};

optimizer::Scenario to_scenario(const config::ScenarioConfig& cfg) {
  optimizer::Scenario s;
  s.kind = cfg.kind;
  s.n_sectors = cfg.pattern.n_sectors;
  s.lobe_exponent = cfg.pattern.lobe_exponent;
  s.ref = cfg.sector_ref;
  s.budget = cfg.budget;
  s.gamma_th = cfg.gamma_th;
  switch (cfg.kind) {
    case analytic::LinkKind::u2u:
      s.orient_tx = *cfg.tx;
      s.orient_rx = *cfg.rx;
      break;
    case analytic::LinkKind::u2u2u:
      s.orient_tx = *cfg.source;
      s.orient_rx = *cfg.destination;
      s.orient_relay = *cfg.relay;
      break;
    case analytic::LinkKind::g2u2g:
      s.orient_relay = *cfg.relay;
      break;
  }
  return s;
}

LoadedScenario load(const CommonOptions& opts) {
  if (opts.config_path.empty()) {
    throw std::runtime_error("--config is required");
  }
  LoadedScenario out{config::parse_file(opts.config_path), {}};
  if (opts.seed) out.cfg.seed = *opts.seed;
  if (opts.trials) out.cfg.trials = *opts.trials;
  out.scenario = to_scenario(out.cfg);
  return out;
}

std::ofstream open_csv(const CommonOptions& opts, const std::string& name,
                       const config::ScenarioConfig& cfg,
                       std::vector<std::string>& outputs) {
  std::filesystem::create_directories(opts.out_dir);
  const std::string path = opts.out_dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(cfg.hash()));
  out << "# config_hash=" << buf << "\n";
  out << "# version=" << kVersion << "\n";
  out << "# kind=" << analytic::to_string(cfg.kind) << "\n";
  out.precision(12);
  outputs.push_back(path);
  return out;
}

void write_manifest(const CommonOptions& opts, const std::string& command,
                    const config::ScenarioConfig& cfg,
                    const std::vector<std::string>& outputs,
                    const json& extra) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(cfg.hash()));
  json manifest = {
      {"command", command},
      {"config_hash", buf},
      {"kind", analytic::to_string(cfg.kind)},
      {"seed", cfg.seed},
      {"trials", cfg.trials},
      {"outputs", outputs},
  };
  if (!extra.is_null()) manifest["result"] = extra;
  std::ofstream out(opts.out_dir + "/run.json");
  out << manifest.dump(2) << "\n";
}

montecarlo::EmpiricalResult run_mc(const config::ScenarioConfig& cfg,
                                   montecarlo::GainModel model) {
  montecarlo::SimConfig sim;
  sim.link_kind = cfg.kind;
  sim.trials = cfg.trials;
  sim.gain_model = model;
  sim.sector_ref = cfg.sector_ref;
  sim.seed = cfg.seed;
  sim.gamma_th = cfg.gamma_th;
  switch (cfg.kind) {
    case analytic::LinkKind::u2u:
      return montecarlo::simulate_u2u(sim, cfg.pattern, *cfg.tx, *cfg.rx,
                                      cfg.budget);
    case analytic::LinkKind::u2u2u: {
      analytic::RelayLink link{cfg.pattern, *cfg.source, *cfg.relay,
                               *cfg.destination, cfg.budget, cfg.sector_ref};
      return montecarlo::simulate_u2u2u(sim, link);
    }
    case analytic::LinkKind::g2u2g: {
      analytic::GroundRelayLink link{cfg.pattern, *cfg.relay, cfg.budget,
                                     cfg.sector_ref};
      return montecarlo::simulate_g2u2g(sim, link);
    }
  }
  throw std::logic_error("run_mc: bad link kind");
}

analytic::DistributionCurve analytic_curve(const config::ScenarioConfig& cfg,
                                           const std::vector<double>& grid) {
  switch (cfg.kind) {
    case analytic::LinkKind::u2u: {
      const SectorGainTable table =
          build_sector_table(cfg.pattern, *cfg.tx, *cfg.rx, cfg.sector_ref);
      return analytic::build_u2u_curve(table, cfg.budget, grid);
    }
    case analytic::LinkKind::u2u2u: {
      analytic::RelayLink link{cfg.pattern, *cfg.source, *cfg.relay,
                               *cfg.destination, cfg.budget, cfg.sector_ref};
      return analytic::build_u2u2u_curve(link, grid);
    }
    case analytic::LinkKind::g2u2g: {
      analytic::GroundRelayLink link{cfg.pattern, *cfg.relay, cfg.budget,
                                     cfg.sector_ref};
      return analytic::build_g2u2g_curve(link, grid);
    }
  }
  throw std::logic_error("analytic_curve: bad link kind");
}

void apply_axis(config::ScenarioConfig& cfg, optimizer::Scenario& scenario,
                SweepAxis::Var var, double value) {
  const auto set_sigma = [&](double sigma) {
    for (auto* o : {&cfg.tx, &cfg.rx, &cfg.source, &cfg.relay,
                    &cfg.destination}) {
      if (o->has_value()) (*o)->sigma = sigma;
    }
    scenario.orient_tx.sigma = sigma;
    scenario.orient_rx.sigma = sigma;
    scenario.orient_relay.sigma = sigma;
  };
  const auto set_offset = [&](double offset) {
    for (auto* o : {&cfg.tx, &cfg.rx, &cfg.source, &cfg.relay,
                    &cfg.destination}) {
      if (o->has_value()) (*o)->boresight = offset;
    }
    scenario.orient_tx.boresight = offset;
    scenario.orient_rx.boresight = offset;
    scenario.orient_relay.boresight = offset;
  };
  switch (var) {
    case SweepAxis::Var::snr_db:
      cfg.budget.snr_mode = SnrMode::normalized;
      cfg.budget.ref_snr_db = value;
      scenario.budget = cfg.budget;
      break;
    case SweepAxis::Var::n_elements:
      cfg.pattern.n_elements = static_cast<int>(std::lround(value));
      break;
    case SweepAxis::Var::sigma_mrad:
      set_sigma(value * 1e-3);
      break;
    case SweepAxis::Var::offset_mrad:
      set_offset(value * 1e-3);
      break;
  }
}

const char* axis_name(SweepAxis::Var var) {
  switch (var) {
    case SweepAxis::Var::snr_db: return "snr_db";
    case SweepAxis::Var::n_elements: return "n_elements";
    case SweepAxis::Var::sigma_mrad: return "sigma_mrad";
    case SweepAxis::Var::offset_mrad: return "offset_mrad";
  }
  return "?";
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  std::vector<double> out;
  if (step <= 0.0) throw std::runtime_error("sweep step must be positive");
  for (double v = from; v <= to + 1e-9 * std::abs(step); v += step) {
    out.push_back(v);
  }
  return out;
}

SweepAxis SweepAxis::parse(const std::string& text) {
  SweepAxis axis;
  std::string name;
  double a = 0.0;
  double b = 0.0;
  double s = 1.0;
  const std::size_t c1 = text.find(':');
  if (c1 == std::string::npos) throw std::runtime_error("bad sweep spec: " + text);
  name = text.substr(0, c1);
  if (std::sscanf(text.c_str() + c1 + 1, "%lf:%lf:%lf", &a, &b, &s) != 3) {
    throw std::runtime_error("bad sweep spec: " + text);
  }
  if (name == "snr") {
    axis.var = Var::snr_db;
  } else if (name == "n") {
    axis.var = Var::n_elements;
  } else if (name == "sigma") {
    axis.var = Var::sigma_mrad;
  } else if (name == "offset") {
    axis.var = Var::offset_mrad;
  } else {
    throw std::runtime_error("unknown sweep variable: " + name);
  }
  axis.from = a;
  axis.to = b;
  axis.step = s;
  return axis;
}

int run_curve(const CommonOptions& opts) {
  const LoadedScenario loaded = load(opts);
  const config::ScenarioConfig& cfg = loaded.cfg;
  std::vector<std::string> outputs;

  const std::vector<double> grid = analytic::default_gamma_grid(
      cfg.budget, cfg.pattern.n_elements, cfg.grid_points);
  const analytic::DistributionCurve curve = analytic_curve(cfg, grid);
  const auto write_column = [&](const std::string& name,
                                const std::vector<double>& column) {
    std::ofstream out = open_csv(opts, name, cfg, outputs);
    out << "# zero_atom=" << curve.zero_atom << "\n";
    out << "gamma_linear,gamma_db,value\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << grid[i] << ',' << linear_to_db(grid[i]) << ',' << column[i]
          << "\n";
    }
  };
  write_column("curve_pdf.csv", curve.pdf);
  write_column("curve_cdf.csv", curve.cdf);

  json extra;
  if (opts.evaluator != optimizer::Evaluator::analytic) {
    const montecarlo::EmpiricalResult mc =
        run_mc(cfg, montecarlo::GainModel::sectorized);
    std::ofstream out = open_csv(opts, "curve_mc.csv", cfg, outputs);
    out << "# zero_atom=" << mc.zero_fraction() << "\n";
    out << "gamma_linear,gamma_db,cdf\n";
    for (std::size_t i = 0; i < mc.edges.size(); ++i) {
      out << mc.edges[i] << ',' << linear_to_db(mc.edges[i]) << ','
          << mc.cdf(mc.edges[i]) << "\n";
    }
    extra = {{"mc_zero_fraction", mc.zero_fraction()}};
  }
  write_manifest(opts, "curve", cfg, outputs, extra);
  return 0;
}

int run_outage(const CommonOptions& opts, const SweepAxis& axis) {
  const LoadedScenario loaded = load(opts);
  std::vector<std::string> outputs;
  std::ofstream out = open_csv(opts, "outage.csv", loaded.cfg, outputs);
  out << "# sweep_var=" << axis_name(axis.var) << "\n";
  out << "sweep_var,p_out_analytic,p_out_mc,mc_stderr\n";

  for (double value : axis.values()) {
    config::ScenarioConfig cfg = loaded.cfg;
    optimizer::Scenario scenario = loaded.scenario;
    apply_axis(cfg, scenario, axis.var, value);
    out << value;
    if (opts.evaluator != optimizer::Evaluator::montecarlo) {
      out << ',' << optimizer::analytic_outage(scenario, cfg.pattern.n_elements);
    } else {
      out << ',';
    }
    if (opts.evaluator != optimizer::Evaluator::analytic) {
      const montecarlo::EmpiricalResult mc =
          run_mc(cfg, montecarlo::GainModel::sectorized);
      out << ',' << mc.outage << ',' << mc.outage_se << "\n";
    } else {
      out << ",,\n";
    }
  }
  write_manifest(opts, "outage", loaded.cfg, outputs, json());
  return 0;
}

int run_validate(const CommonOptions& opts) {
  const LoadedScenario loaded = load(opts);
  const config::ScenarioConfig& cfg = loaded.cfg;
  std::vector<std::string> outputs;

  const montecarlo::EmpiricalResult mc =
      run_mc(cfg, montecarlo::GainModel::cosine);
  const std::vector<double> grid = analytic::default_gamma_grid(
      cfg.budget, cfg.pattern.n_elements, cfg.grid_points);
  const analytic::DistributionCurve curve = analytic_curve(cfg, grid);

  double sup = std::abs(curve.zero_atom - mc.zero_fraction());
  {
    std::ofstream out = open_csv(opts, "validate.csv", cfg, outputs);
    out << "gamma_linear,gamma_db,cdf_analytic,cdf_empirical,abs_diff\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double diff = std::abs(curve.cdf[i] - mc.cdf(grid[i]));
      sup = std::max(sup, diff);
      out << grid[i] << ',' << linear_to_db(grid[i]) << ',' << curve.cdf[i]
          << ',' << mc.cdf(grid[i]) << ',' << diff << "\n";
    }
  }
  const double p_analytic = [&]() {
    optimizer::Scenario scenario = loaded.scenario;
    return optimizer::analytic_outage(scenario, cfg.pattern.n_elements);
  }();
  const double se = std::max(mc.outage_se, 1e-12);
  const double outage_se_units = std::abs(p_analytic - mc.outage) / se;

  constexpr double kSupTol = 1e-2;
  constexpr double kSeTol = 3.0;
  const bool pass = sup <= kSupTol && outage_se_units <= kSeTol;
  std::cout << "sup |F_analytic - F_empirical| = " << sup
            << (sup <= kSupTol ? " (PASS)" : " (FAIL)") << "\n"
            << "outage difference = " << outage_se_units << " SE"
            << (outage_se_units <= kSeTol ? " (PASS)" : " (FAIL)") << "\n";
  write_manifest(opts, "validate", cfg, outputs,
                 json{{"sup_cdf_distance", sup},
                      {"sup_tolerance", kSupTol},
                      {"outage_se_units", outage_se_units},
                      {"se_tolerance", kSeTol},
                      {"pass", pass}});
  return pass ? 0 : 2;
}

int run_optimal_n(const CommonOptions& opts, int n_min, int n_max,
                  const std::optional<SweepAxis>& axis) {
  const LoadedScenario loaded = load(opts);
  std::vector<std::string> outputs;
  std::ofstream out = open_csv(opts, "optimal_n.csv", loaded.cfg, outputs);
  if (axis) out << "# sweep_var=" << axis_name(axis->var) << "\n";
  out << "sweep_var,n_opt_analytic,p_out_analytic,n_opt_mc,p_out_mc\n";

  const std::vector<double> values =
      axis ? axis->values() : std::vector<double>{0.0};
  json rows = json::array();
  for (double value : values) {
    config::ScenarioConfig cfg = loaded.cfg;
    optimizer::Scenario scenario = loaded.scenario;
    if (axis) apply_axis(cfg, scenario, axis->var, value);

    optimizer::SweepSpec spec;
    spec.n_min = n_min;
    spec.n_max = n_max;
    spec.evaluator = opts.evaluator;
    spec.mc_trials = cfg.trials;
    spec.mc_seed = cfg.seed;
    const optimizer::OptimumRecord rec =
        optimizer::find_optimal_n(spec, scenario);

    out << value << ',';
    if (opts.evaluator != optimizer::Evaluator::montecarlo) {
      out << rec.n_opt << ',' << rec.p_out << ',';
    } else {
      out << ",,";
    }
    if (rec.n_opt_mc) {
      out << *rec.n_opt_mc << ',' << *rec.p_out_mc << "\n";
    } else {
      out << ",\n";
    }
    std::cout << "sweep_var=" << value << " n_opt=" << rec.n_opt
              << " p_out=" << rec.p_out << "\n";
    json row = {{"sweep_var", value},
                {"n_opt", rec.n_opt},
                {"p_out", rec.p_out}};
    if (rec.n_opt_mc) row["n_opt_mc"] = *rec.n_opt_mc;
    if (rec.p_out_mc) row["p_out_mc"] = *rec.p_out_mc;
    rows.push_back(row);
  }
  write_manifest(opts, "optimal-n", loaded.cfg, outputs, json{{"rows", rows}});
  return 0;
}

}  // namespace mmlink::cli
