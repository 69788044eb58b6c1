#pragma once

#include <cstdint>
#include <vector>

#include "mmlink/analytic.hpp"
#include "mmlink/antenna.hpp"
#include "mmlink/linkbudget.hpp"

namespace mmlink::montecarlo {

enum class GainModel { exact, cosine, sectorized };

struct SimConfig {
  analytic::LinkKind link_kind = analytic::LinkKind::u2u;
  std::uint64_t trials = 10'000'000;
  GainModel gain_model = GainModel::exact;
  SectorRef sector_ref = SectorRef::mid;  // for GainModel::sectorized
  std::uint64_t seed = 1;
  double gamma_th = 0.0;          // linear outage threshold
  int fine_bins = 2000;           // internal CDF resolution
  int n_workers = 0;              // 0 = hardware concurrency

  void validate() const;
};

// Streaming empirical distribution: exact CDF values at the fine edges,
// outage estimate with binomial standard error, and the zero-SNR count.
// Aggregation is per-chunk with one RngStream per chunk, so results are
// bit-identical for any worker count.
struct EmpiricalResult {
  std::vector<double> edges;            // ascending gamma values
  std::vector<std::uint64_t> cum_counts;  // #samples <= edge (zero excluded)
  std::uint64_t zero_count = 0;
  std::uint64_t trials = 0;

  double outage = 0.0;     // empirical Pr{gamma < gamma_th}
  double outage_se = 0.0;  // binomial standard error

  // Empirical CDF at x, including the zero atom.
  double cdf(double x) const;
  double zero_fraction() const;

  // Freedman-Diaconis style histogram of the positive-SNR subsample,
  // rebinned from the fine grid; densities integrate to 1 - zero fraction.
  struct Histogram {
    std::vector<double> bin_edges;
    std::vector<double> density;
  };
  Histogram histogram() const;
};

EmpiricalResult simulate_u2u(const SimConfig& config, const UlaPattern& pattern,
                             const OrientationModel& orient_tx,
                             const OrientationModel& orient_rx,
                             const LinkBudget& budget);

EmpiricalResult simulate_u2u2u(const SimConfig& config,
                               const analytic::RelayLink& link);

EmpiricalResult simulate_g2u2g(const SimConfig& config,
                               const analytic::GroundRelayLink& link);

}  // namespace mmlink::montecarlo
