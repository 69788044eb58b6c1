#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmlink/analytic.hpp"
#include "mmlink/montecarlo.hpp"

// Sweeps of the antenna element count N to locate the outage-minimizing
// configuration.
namespace mmlink::optimizer {

enum class Evaluator { analytic, montecarlo, both };

// One fully-specified scenario apart from N.
struct Scenario {
  analytic::LinkKind kind = analytic::LinkKind::u2u;
  int n_sectors = 20;
  double lobe_exponent = 2.5;
  SectorRef ref = SectorRef::lower;
  OrientationModel orient_tx;   // u2u: tx / u2u2u: source
  OrientationModel orient_rx;   // u2u: rx / u2u2u: destination
  OrientationModel orient_relay;  // relay links only
  LinkBudget budget;
  double gamma_th = 10.0;  // linear
};

struct SweepSpec {
  int n_min = 2;
  int n_max = 32;
  Evaluator evaluator = Evaluator::analytic;
  std::uint64_t mc_trials = 10'000'000;
  std::uint64_t mc_seed = 1;
  montecarlo::GainModel mc_gain_model = montecarlo::GainModel::sectorized;

  void validate() const;
};

struct SweepPoint {
  int n_elements = 0;
  std::optional<double> p_out_analytic;
  std::optional<double> p_out_mc;
  std::optional<double> mc_stderr;
};

struct OptimumRecord {
  int n_opt = 0;
  double p_out = 0.0;
  Evaluator evaluator = Evaluator::analytic;
  std::optional<int> n_opt_mc;      // filled when evaluator == both
  std::optional<double> p_out_mc;
};

std::vector<SweepPoint> sweep_outage(const SweepSpec& spec,
                                     const Scenario& scenario);

// Argmin over the sweep; ties break toward smaller N.
OptimumRecord find_optimal_n(const SweepSpec& spec, const Scenario& scenario);

// Single outage evaluation for the scenario at the given N (analytic path).
double analytic_outage(const Scenario& scenario, int n_elements);

}  // namespace mmlink::optimizer
