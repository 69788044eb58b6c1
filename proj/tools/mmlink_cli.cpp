#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "mmlink/cli.hpp"

namespace {

mmlink::optimizer::Evaluator parse_evaluator(const std::string& name) {
  if (name == "analytic") return mmlink::optimizer::Evaluator::analytic;
  if (name == "mc" || name == "montecarlo") {
    return mmlink::optimizer::Evaluator::montecarlo;
  }
  if (name == "both") return mmlink::optimizer::Evaluator::both;
  throw CLI::ValidationError("--evaluator", "must be analytic|montecarlo|both");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave link distribution and outage toolkit"};
  app.require_subcommand(1);

  mmlink::cli::CommonOptions opts;
  std::string evaluator = "analytic";
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", opts.config_path, "scenario config file")
        ->required();
    cmd->add_option("-o,--out-dir", opts.out_dir, "output directory");
    cmd->add_option("--seed", seed, "override [run] seed");
    cmd->add_option("--trials", trials, "override [run] trials");
    cmd->add_option("--evaluator", evaluator, "analytic|montecarlo|both");
  };

  CLI::App* curve = app.add_subcommand("curve", "SNR pdf/cdf curves");
  add_common(curve);

  CLI::App* outage = app.add_subcommand("outage", "outage probability sweep");
  add_common(outage);
  std::string sweep = "snr:0:40:1";
  outage->add_option("--sweep", sweep, "axis spec: {snr|n|sigma|offset}:from:to:step");

  CLI::App* validate =
      app.add_subcommand("validate", "analytic vs Monte Carlo CDF distance");
  add_common(validate);

  CLI::App* optimal =
      app.add_subcommand("optimal-n", "outage-minimizing element count");
  add_common(optimal);
  int n_min = 2;
  int n_max = 32;
  std::string optimal_sweep;
  optimal->add_option("--n-min", n_min, "smallest element count");
  optimal->add_option("--n-max", n_max, "largest element count");
  optimal->add_option("--sweep", optimal_sweep,
                      "optional axis spec, one optimum row per value");

  CLI11_PARSE(app, argc, argv);

  try {
    opts.evaluator = parse_evaluator(evaluator);
    if (seed != 0) opts.seed = seed;
    if (trials != 0) opts.trials = trials;
    if (curve->parsed()) return mmlink::cli::run_curve(opts);
    if (outage->parsed()) {
      return mmlink::cli::run_outage(opts, mmlink::cli::SweepAxis::parse(sweep));
    }
    if (validate->parsed()) return mmlink::cli::run_validate(opts);
    if (optimal->parsed()) {
      std::optional<mmlink::cli::SweepAxis> axis;
      if (!optimal_sweep.empty()) {
        axis = mmlink::cli::SweepAxis::parse(optimal_sweep);
      }
      return mmlink::cli::run_optimal_n(opts, n_min, n_max, axis);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
