#include "mmlink/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace mmlink::optimizer {
namespace {

UlaPattern pattern_for(const Scenario& scenario, int n_elements) {
  UlaPattern p;
  p.n_elements = n_elements;
  p.n_sectors = scenario.n_sectors;
  p.lobe_exponent = scenario.lobe_exponent;
  return p;
}

double mc_outage(const SweepSpec& spec, const Scenario& scenario,
                 int n_elements, double* stderr_out) {
  const UlaPattern pattern = pattern_for(scenario, n_elements);
  montecarlo::SimConfig config;
  config.link_kind = scenario.kind;
  config.trials = spec.mc_trials;
  config.gain_model = spec.mc_gain_model;
  config.sector_ref = scenario.ref;
  config.seed = spec.mc_seed;
  config.gamma_th = scenario.gamma_th;

  montecarlo::EmpiricalResult r;
  switch (scenario.kind) {
    case analytic::LinkKind::u2u:
      r = montecarlo::simulate_u2u(config, pattern, scenario.orient_tx,
                                   scenario.orient_rx, scenario.budget);
      break;
    case analytic::LinkKind::u2u2u: {
      analytic::RelayLink link{pattern, scenario.orient_tx,
                               scenario.orient_relay, scenario.orient_rx,
                               scenario.budget, scenario.ref};
      r = montecarlo::simulate_u2u2u(config, link);
      break;
    }
    case analytic::LinkKind::g2u2g: {
      analytic::GroundRelayLink link{pattern, scenario.orient_relay,
                                     scenario.budget, scenario.ref};
      r = montecarlo::simulate_g2u2g(config, link);
      break;
    }
  }
  if (stderr_out != nullptr) *stderr_out = r.outage_se;
  return r.outage;
}

}  // namespace

void SweepSpec::validate() const {
  if (n_min < 2) throw std::invalid_argument("SweepSpec: n_min < 2");
  if (n_max < n_min) throw std::invalid_argument("SweepSpec: n_max < n_min");
  if (n_max > 64) throw std::invalid_argument("SweepSpec: n_max > 64");
  if (mc_trials == 0) throw std::invalid_argument("SweepSpec: mc_trials == 0");
}

double analytic_outage(const Scenario& scenario, int n_elements) {
  const UlaPattern pattern = pattern_for(scenario, n_elements);
  switch (scenario.kind) {
    case analytic::LinkKind::u2u: {
      const SectorGainTable table = build_sector_table(
          pattern, scenario.orient_tx, scenario.orient_rx, scenario.ref);
      return analytic::outage_probability(table, scenario.budget,
                                          scenario.gamma_th);
    }
    case analytic::LinkKind::u2u2u: {
      analytic::RelayLink link{pattern, scenario.orient_tx,
                               scenario.orient_relay, scenario.orient_rx,
                               scenario.budget, scenario.ref};
      return analytic::outage_probability(link, scenario.gamma_th);
    }
    case analytic::LinkKind::g2u2g: {
      analytic::GroundRelayLink link{pattern, scenario.orient_relay,
                                     scenario.budget, scenario.ref};
      return analytic::outage_probability(link, scenario.gamma_th);
    }
  }
  throw std::logic_error("analytic_outage: bad link kind");
}

std::vector<SweepPoint> sweep_outage(const SweepSpec& spec,
                                     const Scenario& scenario) {
  spec.validate();
  scenario.budget.validate();
  std::vector<SweepPoint> points;
  points.reserve(static_cast<std::size_t>(spec.n_max - spec.n_min + 1));
  for (int n = spec.n_min; n <= spec.n_max; ++n) {
    SweepPoint pt;
    pt.n_elements = n;
    if (spec.evaluator != Evaluator::montecarlo) {
      pt.p_out_analytic = analytic_outage(scenario, n);
    }
    if (spec.evaluator != Evaluator::analytic) {
      double se = 0.0;
      pt.p_out_mc = mc_outage(spec, scenario, n, &se);
      pt.mc_stderr = se;
    }
    points.push_back(pt);
  }
  return points;
}

OptimumRecord find_optimal_n(const SweepSpec& spec, const Scenario& scenario) {
  const std::vector<SweepPoint> points = sweep_outage(spec, scenario);
  OptimumRecord rec;
  rec.evaluator = spec.evaluator;

  const bool have_analytic = spec.evaluator != Evaluator::montecarlo;
  double best = 0.0;
  double best_mc = 0.0;
  int best_n_mc = 0;
  bool first = true;
  for (const SweepPoint& pt : points) {
    const double primary =
        have_analytic ? *pt.p_out_analytic : *pt.p_out_mc;
    if (first || primary < best) {
      best = primary;
      rec.n_opt = pt.n_elements;
    }
    if (pt.p_out_mc && (first || *pt.p_out_mc < best_mc)) {
      best_mc = *pt.p_out_mc;
      best_n_mc = pt.n_elements;
    }
    first = false;
  }
  rec.p_out = best;
  if (spec.evaluator == Evaluator::both) {
    rec.n_opt_mc = best_n_mc;
    rec.p_out_mc = best_mc;
  } else if (spec.evaluator == Evaluator::montecarlo) {
    rec.p_out_mc = best;
    rec.n_opt_mc = rec.n_opt;
  }
  return rec;
}

}  // namespace mmlink::optimizer
