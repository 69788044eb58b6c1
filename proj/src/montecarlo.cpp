#include "mmlink/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mmlink/rng.hpp"

namespace mmlink::montecarlo {
namespace {

constexpr std::uint64_t kChunk = 1u << 20;

double pattern_gain(const UlaPattern& pattern, GainModel model, SectorRef ref,
                    double theta) {
  switch (model) {
    case GainModel::exact: return exact_gain(pattern, theta);
    case GainModel::cosine: return cosine_gain(pattern, theta);
    case GainModel::sectorized: return sectorized_gain(pattern, theta, ref);
  }
  throw std::logic_error("pattern_gain: bad model");
}

struct Accumulator {
  std::vector<std::uint64_t> counts;  // per fine bin, overflow dropped
  std::uint64_t zero = 0;
  std::uint64_t outage = 0;

  explicit Accumulator(std::size_t bins) : counts(bins, 0) {}

  void add(const Accumulator& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    zero += other.zero;
    outage += other.outage;
  }
};

// Draws one end-to-end SNR sample; returns 0 for a lost link.
template <typename Sampler>
EmpiricalResult run(const SimConfig& config, const UlaPattern& pattern,
                    const LinkBudget& budget, Sampler sampler) {
  config.validate();
  pattern.validate();
  budget.validate();

  EmpiricalResult result;
  result.trials = config.trials;
  const double gamma_bar = reference_snr(budget);
  const double lo = std::log(gamma_bar * 1e-6);
  const double hi =
      std::log(gamma_bar * std::pow(double(pattern.n_elements), 4) * 10.0);
  result.edges.resize(config.fine_bins);
  for (int i = 0; i < config.fine_bins; ++i) {
    result.edges[i] = std::exp(lo + (hi - lo) * i / (config.fine_bins - 1));
  }

  const std::uint64_t n_chunks = (config.trials + kChunk - 1) / kChunk;
  unsigned workers = config.n_workers > 0
                         ? static_cast<unsigned>(config.n_workers)
                         : std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, n_chunks)));

  std::vector<Accumulator> partial(workers, Accumulator(result.edges.size()));
  std::atomic<std::uint64_t> next_chunk{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      Accumulator& acc = partial[w];
      for (;;) {
        const std::uint64_t c = next_chunk.fetch_add(1);
        if (c >= n_chunks) return;
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t count =
            std::min<std::uint64_t>(kChunk, config.trials - begin);
        RngStream rng(config.seed, c);
        for (std::uint64_t t = 0; t < count; ++t) {
          const double gamma = sampler(rng);
          if (gamma < config.gamma_th) ++acc.outage;
          if (gamma <= 0.0) {
            ++acc.zero;
            continue;
          }
          const auto it = std::lower_bound(result.edges.begin(),
                                           result.edges.end(), gamma);
          if (it != result.edges.end()) {
            ++acc.counts[static_cast<std::size_t>(it - result.edges.begin())];
          }
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (unsigned w = 1; w < workers; ++w) partial[0].add(partial[w]);

  result.zero_count = partial[0].zero;
  result.cum_counts.resize(result.edges.size());
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < result.edges.size(); ++i) {
    running += partial[0].counts[i];
    result.cum_counts[i] = running;
  }
  const double p = static_cast<double>(partial[0].outage) / config.trials;
  result.outage = p;
  result.outage_se = std::sqrt(std::max(0.0, p * (1.0 - p)) / config.trials);
  return result;
}

}  // namespace

void SimConfig::validate() const {
  if (trials == 0) throw std::invalid_argument("SimConfig: trials == 0");
  if (fine_bins < 10) throw std::invalid_argument("SimConfig: fine_bins < 10");
  if (gamma_th < 0.0) throw std::invalid_argument("SimConfig: gamma_th < 0");
  if (n_workers < 0) throw std::invalid_argument("SimConfig: n_workers < 0");
}

double EmpiricalResult::cdf(double x) const {
  if (x < 0.0) return 0.0;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::uint64_t below = zero_count;
  if (it != edges.begin()) below += cum_counts[it - edges.begin() - 1];
  return static_cast<double>(below) / static_cast<double>(trials);
}

double EmpiricalResult::zero_fraction() const {
  return static_cast<double>(zero_count) / static_cast<double>(trials);
}

EmpiricalResult::Histogram EmpiricalResult::histogram() const {
  Histogram h;
  const std::uint64_t n_pos = cum_counts.empty() ? 0 : cum_counts.back();
  if (n_pos < 2) return h;

  const auto quantile = [&](double q) {
    const std::uint64_t target =
        static_cast<std::uint64_t>(q * static_cast<double>(n_pos));
    const auto it = std::lower_bound(cum_counts.begin(), cum_counts.end(), target);
    return edges[std::min<std::size_t>(it - cum_counts.begin(), edges.size() - 1)];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  const double width = iqr > 0.0
                           ? 2.0 * iqr / std::cbrt(static_cast<double>(n_pos))
                           : (edges.back() - edges.front()) / 50.0;

  // Merge fine bins until each merged bin spans at least `width`.
  h.bin_edges.push_back(edges.front());
  std::uint64_t prev_cum = cum_counts.front();
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const bool last = (i + 1 == edges.size());
    if (edges[i] - h.bin_edges.back() >= width || last) {
      const double span = edges[i] - h.bin_edges.back();
      const std::uint64_t in_bin = cum_counts[i] - prev_cum;
      h.density.push_back(static_cast<double>(in_bin) /
                          (static_cast<double>(trials) * span));
      h.bin_edges.push_back(edges[i]);
      prev_cum = cum_counts[i];
    }
  }
  return h;
}

EmpiricalResult simulate_u2u(const SimConfig& config, const UlaPattern& pattern,
                             const OrientationModel& orient_tx,
                             const OrientationModel& orient_rx,
                             const LinkBudget& budget) {
  orient_tx.validate();
  orient_rx.validate();
  const double gamma_bar = reference_snr(budget);
  const double m = budget.nakagami_m;
  return run(config, pattern, budget, [&, m, gamma_bar](RngStream& rng) {
    const double tt = rng.next_gaussian(orient_tx.boresight, orient_tx.sigma);
    const double tr = rng.next_gaussian(orient_rx.boresight, orient_rx.sigma);
    const double g = pattern_gain(pattern, config.gain_model, config.sector_ref, tt) *
                     pattern_gain(pattern, config.gain_model, config.sector_ref, tr);
    if (g <= 0.0) return 0.0;
    return rng.next_gamma(m, m) * g * gamma_bar;
  });
}

EmpiricalResult simulate_u2u2u(const SimConfig& config,
                               const analytic::RelayLink& link) {
  link.source.validate();
  link.relay.validate();
  link.destination.validate();
  const double gamma_bar = reference_snr(link.budget);
  const double m = link.budget.nakagami_m;
  return run(config, link.pattern, link.budget, [&, m, gamma_bar](RngStream& rng) {
    const double ts = rng.next_gaussian(link.source.boresight, link.source.sigma);
    const double tr = rng.next_gaussian(link.relay.boresight, link.relay.sigma);
    const double td = rng.next_gaussian(link.destination.boresight,
                                        link.destination.sigma);
    const double gr = pattern_gain(link.pattern, config.gain_model,
                                   config.sector_ref, tr);
    if (gr <= 0.0) return 0.0;
    const double gs = pattern_gain(link.pattern, config.gain_model,
                                   config.sector_ref, ts) * gr;
    const double gd = pattern_gain(link.pattern, config.gain_model,
                                   config.sector_ref, td) * gr;
    if (gs <= 0.0 || gd <= 0.0) return 0.0;
    const double snr_sr = rng.next_gamma(m, m) * gs * gamma_bar;
    const double snr_dr = rng.next_gamma(m, m) * gd * gamma_bar;
    if (snr_sr <= 0.0 || snr_dr <= 0.0) return 0.0;
    return snr_sr * snr_dr / (snr_sr + snr_dr);
  });
}

EmpiricalResult simulate_g2u2g(const SimConfig& config,
                               const analytic::GroundRelayLink& link) {
  link.relay.validate();
  const double gamma_bar = reference_snr(link.budget);
  const double m = link.budget.nakagami_m;
  const double n = link.pattern.n_elements;
  return run(config, link.pattern, link.budget, [&, m, n, gamma_bar](RngStream& rng) {
    const double tr = rng.next_gaussian(link.relay.boresight, link.relay.sigma);
    const double g = n * pattern_gain(link.pattern, config.gain_model,
                                      config.sector_ref, tr);
    if (g <= 0.0) return 0.0;
    const double snr_sr = rng.next_gamma(m, m) * g * gamma_bar;
    const double snr_dr = rng.next_gamma(m, m) * g * gamma_bar;
    if (snr_sr <= 0.0 || snr_dr <= 0.0) return 0.0;
    return snr_sr * snr_dr / (snr_sr + snr_dr);
  });
}

}  // namespace mmlink::montecarlo
